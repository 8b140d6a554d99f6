#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evlab/evidence_model.hpp"
#include "evlab/formula.hpp"

namespace evlab {

struct CheckOptions {
  // Reject the model (per evidence state, with a witness in the message)
  // when (E1) fails. The default general K clause is correct either way;
  // strict mode serves workflows that assume the simplified semantics.
  bool strict_e1 = false;
};

/// Truth set ‖f‖^e (or ‖f‖^{e,V} when a belief set is given) — always a
/// subset of U_e. Throws EvalError if f contains B without a belief set,
/// or any □/◇/effort operator (those live on interaction models).
WorldSet truth_set(const EvidenceModel& m, std::size_t e, const FormulaPtr& f,
                   const std::optional<WorldSet>& belief = std::nullopt,
                   const CheckOptions& opts = {});

bool holds(const EvidenceModel& m, const Scenario& s, const FormulaPtr& f,
           const CheckOptions& opts = {});
bool holds(const EvidenceModel& m, const DoxasticScenario& s,
           const FormulaPtr& f, const CheckOptions& opts = {});

/// Evaluation trace: one node per clause application. Universal clauses
/// (E, K, B) that fail carry a witness world and recurse into the operand
/// at that witness, which is how chains like "8 then 6" surface.
struct TraceNode {
  std::string clause;   // "atom", "not", ..., "E", "K", "B"
  std::string formula;  // rendered operand
  std::string world;    // world id the node is evaluated at
  bool result;
  // Labeled world-id lists relevant to the clause (I_e(x), K-domain, V,
  // operand truth set).
  std::vector<std::pair<std::string, std::vector<std::string>>> sets;
  std::optional<std::string> witness;
  std::vector<TraceNode> children;
};

TraceNode explain(const EvidenceModel& m, const Scenario& s,
                  const FormulaPtr& f, const CheckOptions& opts = {});
TraceNode explain(const EvidenceModel& m, const DoxasticScenario& s,
                  const FormulaPtr& f, const CheckOptions& opts = {});

/// Indented human-readable rendering.
std::string format_trace(const TraceNode& t);

}  // namespace evlab
