#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evlab/evidence_model.hpp"
#include "evlab/random.hpp"
#include "evlab/sat.hpp"
#include "evlab/world_set.hpp"

namespace evlab {

/// One axiom scheme: a stable name plus a builder over metavariable
/// instantiations. Unary schemes ignore the second argument.
struct AxiomScheme {
  const char* name;
  int arity;  // 1 or 2 metavariables
  FormulaPtr (*make)(const FormulaPtr&, const FormulaPtr&);
};

/// The schemes whose soundness the fuzzer exercises, in a fixed order.
/// EK is the S5 K-block plus the KT E-block and (KE); the belief logics
/// add the B-block with the derived ~B φ -> K ~B φ (and B φ -> B E φ for
/// the (E2) variant); EKK adds the S4 box-block and (KBox); S4_Box is
/// the box-block alone.
const std::vector<AxiomScheme>& axiom_schemes(LogicId logic);

struct FuzzViolation {
  std::string axiom;
  std::string instance;
  std::string world;
  std::string evidence;  // evidence id, or interaction state label
  nlohmann::json model;
};

struct FuzzReport {
  LogicId logic = LogicId::EK;
  std::size_t trials = 0;
  std::size_t instances = 0;  // scheme instantiations evaluated
  std::size_t points = 0;     // scenarios examined
  std::size_t violation_count = 0;
  std::vector<FuzzViolation> examples;  // first few violations, for triage
  bool pass() const { return violation_count == 0; }
};

/// Test seam: when set, replaces the evidence-side evaluation of one
/// scenario. Lets tests inject a broken clause and confirm the harness
/// reports the resulting unsoundness (the mutation canary).
using EvidenceHoldsHook = std::function<bool(
    const EvidenceModel&, std::size_t world, std::size_t evidence,
    const std::optional<WorldSet>& belief, const FormulaPtr&)>;

struct FuzzOptions {
  int depth = 3;                // metavariable instantiation depth
  ModelProfile model;           // sampled-model size profile
  std::size_t max_examples = 5;
  EvidenceHoldsHook evidence_holds;
};

/// Per trial: one random model of the logic's evidence class and one
/// fresh instantiation of every scheme, evaluated at every scenario of
/// the model (every doxastic scenario for the belief logics, every
/// coherent lattice point for the interaction logics). Deterministic for
/// a fixed seed. Expected: zero violations — the soundness halves of the
/// completeness theorems, tested by sampling.
FuzzReport fuzz_axioms(LogicId logic, std::size_t trials, std::uint64_t seed,
                       const FuzzOptions& opts = {});

nlohmann::json fuzz_to_json(const FuzzReport& r);

}  // namespace evlab
