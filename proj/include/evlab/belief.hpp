#pragma once

#include <optional>
#include <vector>

#include "evlab/evidence_model.hpp"

namespace evlab {

/// The conjecture ladder V¹, V², … with V^k = ⋃_{y ∈ V^{k-1}} I_e(y).
struct BeliefLadder {
  std::size_t evidence;
  std::vector<WorldSet> levels;  // V^1 .. V^{k*} (or up to the detected cycle)
  WorldSet closure;              // V^∞
  // First k with V^{k+1} = V^k. Present whenever the iteration reaches a
  // fixpoint — always in strict mode; absent if a permissive run cycles.
  std::optional<std::size_t> k_star;
  bool nested;  // whether V^{k-1} ⊆ V^k held at every step
};

struct LadderOptions {
  // Nestedness needs (E1) on V's evidence state; strict mode rejects
  // models without it. Permissive mode computes the literal iteration
  // anyway and reports whether nestedness happened to hold.
  bool strict_e1 = true;
};

/// Throws EvalError on an invalid initial conjecture (empty or ⊄ U_e)
/// and, in strict mode, on (E1) failure at e. In a permissive run that
/// cycles without a fixpoint, closure is the union of all levels — still
/// the least (E2)-closed superset of v1.
BeliefLadder ladder(const EvidenceModel& m, std::size_t e, const WorldSet& v1,
                    const LadderOptions& opts = {});

/// Least W ⊇ v with y ∈ W ⇒ I_e(y) ⊆ W. No preconditions beyond v being
/// sized for m; v = ∅ gives ∅.
WorldSet least_e2_superset(const EvidenceModel& m, std::size_t e,
                           const WorldSet& v);

}  // namespace evlab
