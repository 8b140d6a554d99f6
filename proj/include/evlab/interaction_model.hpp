#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evlab/evidence_model.hpp"
#include "evlab/formula.hpp"

namespace evlab {

/// Evidence interaction model: the free meet-semilattice over the base
/// model's evidence states (the generators), with
///   S ⊕ S′ = S ∪ S′,  I_S(x) = ⋂_{g∈S} I_g(x),  e′ ≤ e iff e′⊕e = e′.
/// The base must satisfy (E1) for every generator; derived states then
/// satisfy it too.
///
/// □ and effort quantify over evidence states. Internally the quantifier
/// runs over the extensional closure of the generator interpretation
/// family under pointwise intersection — the same family of
/// interpretation functions the full subset lattice realizes, deduplicated.
/// □/effort only inspect interpretations, so truth values are unchanged,
/// and the size cap becomes a cap on distinct interpretation functions
/// (max_states) rather than on generators.
class InteractionModel {
 public:
  /// A nonempty set of generator indices.
  using State = boost::dynamic_bitset<>;

  static constexpr std::size_t kDefaultMaxStates = 4096;

  static InteractionModel over(EvidenceModel base,
                               std::size_t max_states = kDefaultMaxStates);

  const EvidenceModel& base() const { return base_; }
  std::size_t generator_count() const { return base_.evidence_count(); }
  std::size_t world_count() const { return base_.world_count(); }

  State state(const std::vector<std::string>& generator_ids) const;
  State singleton(std::size_t gen) const;
  State state_from_mask(std::uint64_t mask) const;
  /// All 2^g − 1 states (generator_count ≤ 20 only).
  std::vector<State> all_states() const;

  State meet(const State& a, const State& b) const;
  /// Evidence parthood: a ≤ b iff a ⊕ b = a.
  bool leq(const State& a, const State& b) const;

  /// I_S(x) = ⋂_{g∈S} I_g(x).
  WorldSet interp_at(const State& s, std::size_t x) const;
  /// U_S.
  WorldSet coherence(const State& s) const;

  /// "{g1,g2}" in base evidence order, for reports.
  std::string state_label(const State& s) const;

  /// Full-language truth set ‖f‖^S ⊆ U_S; □/◇ evaluate by the knowability
  /// clause (truth set stays at S), [*]/<*> by the effort clause (the
  /// evidence index shifts to S ⊕ e′). B is not available here.
  WorldSet truth_set(const State& s, const FormulaPtr& f) const;
  /// Throws EvalError when (x, s) is not a scenario (x ∉ U_S).
  bool holds(const State& s, std::size_t x, const FormulaPtr& f) const;

  /// Number of distinct interpretation functions in the closure.
  std::size_t distinct_interpretations() const { return tables_.size(); }

 private:
  using Table = std::vector<WorldSet>;  // one WorldSet per world

  InteractionModel() = default;

  std::size_t table_of(const State& s) const;
  std::size_t meet_index(std::size_t i, std::size_t j) const;
  void check_state(const State& s) const;

  EvidenceModel base_;
  std::vector<Table> tables_;          // ∩-closed interpretation family
  std::vector<WorldSet> u_;            // U per table
  std::vector<WorldSet> union_;        // ⋃_y I(y) per table
  std::vector<std::size_t> gen_table_; // generator → table index
  std::map<Table, std::size_t> index_; // table → position

  friend struct InteractionEval;
};

}  // namespace evlab
