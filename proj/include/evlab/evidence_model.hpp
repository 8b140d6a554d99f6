#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "evlab/world_set.hpp"

namespace evlab {

class EvidenceModel;

/// A coherent world/evidence pair — the point of evaluation. Construct
/// through EvidenceModel::scenario, which rejects incoherent pairs.
struct Scenario {
  std::size_t world;
  std::size_t evidence;
};

/// Scenario plus the agent's conjecture V (nonempty, ⊆ U_e). Construct
/// through EvidenceModel::doxastic_scenario.
struct DoxasticScenario {
  std::size_t world;
  std::size_t evidence;
  WorldSet belief;
};

/// Witness for an (E1) failure: y ∈ I_e(x) but y ∉ I_e(y).
struct E1Witness {
  std::size_t evidence;
  std::size_t x;
  std::size_t y;
};

struct E1StateReport {
  std::size_t evidence;
  bool pass;
  std::optional<E1Witness> witness;  // present exactly on failure
  // On pass, the extensional check of the equivalence ⋃_y I_e(y) = U_e.
  bool union_equals_coherence;
};

struct E1Report {
  bool pass;  // conjunction over states
  std::vector<E1StateReport> states;
};

/// Witness for an (E2) failure: y ∈ V but z ∈ I_e(y) \ V.
struct E2Report {
  bool pass;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (y, z)
};

/// Finite evidence model (X, ℰ, I, v). Immutable once built; U_e and
/// ⋃_y I_e(y) are computed eagerly so concurrent readers never race.
/// Worlds and evidence states are opaque text ids mapped to dense indices.
class EvidenceModel {
 public:
  class Builder;

  std::size_t world_count() const { return worlds_.size(); }
  std::size_t evidence_count() const { return evidence_.size(); }

  const std::string& world_id(std::size_t i) const { return worlds_[i]; }
  const std::string& evidence_id(std::size_t e) const { return evidence_[e]; }
  const std::vector<std::string>& world_ids() const { return worlds_; }
  const std::vector<std::string>& evidence_ids() const { return evidence_; }

  /// Index lookups; the throwing forms name the missing id.
  std::optional<std::size_t> find_world(const std::string& id) const;
  std::optional<std::size_t> find_evidence(const std::string& id) const;
  std::size_t world(const std::string& id) const;
  std::size_t evidence(const std::string& id) const;

  /// I_e(x).
  const WorldSet& interp(std::size_t e, std::size_t x) const {
    return interp_[e][x];
  }
  /// U_e = {x : x ∈ I_e(x)}.
  const WorldSet& coherence_set(std::size_t e) const { return coherence_[e]; }
  /// ⋃_y I_e(y) — the K-domain of e.
  const WorldSet& interp_union(std::size_t e) const { return interp_union_[e]; }

  /// Valuation of an atom; atoms absent from the table are false everywhere.
  const WorldSet& valuation(const std::string& atom) const;
  const std::map<std::string, WorldSet>& valuation_table() const {
    return valuation_;
  }

  /// Throws EvalError on incoherent pairs (x ∉ I_e(x)) or unknown ids.
  Scenario scenario(const std::string& world_id,
                    const std::string& evidence_id) const;
  Scenario scenario(std::size_t world, std::size_t evidence) const;
  bool coherent(std::size_t world, std::size_t evidence) const {
    return coherence_[evidence].test(world);
  }

  /// Additionally requires ∅ ≠ belief ⊆ U_e.
  DoxasticScenario doxastic_scenario(std::size_t world, std::size_t evidence,
                                     WorldSet belief) const;

  E1Report check_e1() const;
  E1StateReport check_e1(std::size_t e) const;
  E2Report check_e2(std::size_t e, const WorldSet& v) const;

  /// Render a set of this model's worlds as a sorted id list.
  std::vector<std::string> names(const WorldSet& w) const;

 private:
  friend class InteractionModel;  // holds one as its generator base
  EvidenceModel() = default;

  std::vector<std::string> worlds_;
  std::vector<std::string> evidence_;
  std::unordered_map<std::string, std::size_t> world_index_;
  std::unordered_map<std::string, std::size_t> evidence_index_;
  std::vector<std::vector<WorldSet>> interp_;  // [e][x]
  std::map<std::string, WorldSet> valuation_;  // ordered for stable output
  std::vector<WorldSet> coherence_;            // U_e
  std::vector<WorldSet> interp_union_;         // ⋃_y I_e(y)
  WorldSet empty_;                             // valuation miss result
};

/// Accumulates the tables, then validates and freezes. Unset (e,x)
/// entries denote I_e(x) = ∅.
class EvidenceModel::Builder {
 public:
  Builder& add_world(std::string id);
  Builder& add_evidence(std::string id);
  /// Replaces I_e(x); ids must have been added already.
  Builder& interp(const std::string& e, const std::string& x,
                  const std::vector<std::string>& worlds);
  Builder& valuation(const std::string& atom,
                     const std::vector<std::string>& worlds);

  /// Index-based variants for programmatic construction. Worlds/evidence
  /// must all be added before the first table entry.
  Builder& interp(std::size_t e, std::size_t x, WorldSet ws);
  Builder& valuation(const std::string& atom, WorldSet ws);

  /// Throws ModelError on duplicate ids, unknown references, or an empty
  /// world/evidence set.
  EvidenceModel build();

 private:
  void freeze_tables();
  std::size_t need_world(const std::string& id) const;
  std::size_t need_evidence(const std::string& id) const;

  EvidenceModel m_;
  bool tables_live_ = false;
};

}  // namespace evlab
