#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "evlab/evidence_model.hpp"
#include "evlab/formula.hpp"
#include "evlab/interaction_model.hpp"
#include "evlab/relational_model.hpp"

namespace evlab {

/// Seeded generator. mt19937_64 output is pinned by the standard and the
/// derived draws below avoid std distributions, so a seed reproduces the
/// same stream on any platform. Modulo bias is irrelevant here —
/// reproducibility is the contract, not exact uniformity.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }
  bool chance(std::uint32_t num, std::uint32_t den) {
    return below(den) < num;
  }
  /// Derive an independent stream (for per-trial reproducibility).
  Rng fork() { return Rng(next() ^ 0x6a09e667f3bcc909ULL); }

 private:
  std::mt19937_64 eng_;
};

struct FormulaProfile {
  std::vector<std::string> atoms;
  int max_depth = 3;          // syntactic nesting bound
  std::vector<Op> operators;  // connectives and modalities to draw from
};

/// Operator pools for the paper's languages.
FormulaProfile profile_ek(int max_depth = 3);
FormulaProfile profile_ekb(int max_depth = 3);
FormulaProfile profile_ekbox(int max_depth = 3);  // L_{E,K,□}
FormulaProfile profile_box(int max_depth = 3);    // □-fragment

FormulaPtr random_formula(Rng& rng, const FormulaProfile& prof);

struct ModelProfile {
  std::size_t min_worlds = 1;
  std::size_t max_worlds = 5;
  std::size_t min_evidence = 1;
  std::size_t max_evidence = 3;
  std::size_t atoms = 3;  // p, q, r, …
  std::uint32_t density_num = 1;
  std::uint32_t density_den = 2;
  bool ensure_scenario = true;  // force at least one coherent pair
};

/// Random evidence model; (E1) enforced by repair (y ∈ I_e(x) forces
/// y ∈ I_e(y)) unless e1_repair is off.
EvidenceModel random_evidence_model(Rng& rng, const ModelProfile& prof,
                                    bool e1_repair = true);

/// Evidence model plus one conjecture per evidence state with a nonempty
/// coherence set. e2_close replaces each conjecture by its least
/// (E2)-closed superset.
struct DoxasticSample {
  EvidenceModel model;
  std::vector<std::optional<WorldSet>> belief;  // per evidence state
};
DoxasticSample random_doxastic_sample(Rng& rng, const ModelProfile& prof,
                                      bool e2_close);

InteractionModel random_interaction_model(Rng& rng, const ModelProfile& prof);

/// Random member of a relational class. For the doxastic class,
/// e2_image closes the belief image under R_E (∀y ∈ V: R_E(y) ⊆ V); for
/// the knowability class R_□ is a reflexive-transitive closure of random
/// edges.
RelationalModel random_relational_model(Rng& rng, RelationalClass cls,
                                        const ModelProfile& prof,
                                        bool e2_image = false);

}  // namespace evlab
