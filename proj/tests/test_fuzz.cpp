#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "evlab/checker.hpp"
#include "evlab/errors.hpp"
#include "evlab/fuzz.hpp"
#include "evlab/model_io.hpp"
#include "evlab/parser.hpp"
#include "support/naive.hpp"

using namespace evlab;
using evlab::testing::naive_holds;
using evlab::testing::NaiveOptions;

namespace {

const std::vector<LogicId> kAllLogics = {LogicId::EK, LogicId::EKB,
                                         LogicId::EKB_E2, LogicId::EKK,
                                         LogicId::S4Box};

std::vector<std::string> scheme_names(LogicId logic) {
  std::vector<std::string> out;
  for (const AxiomScheme& s : axiom_schemes(logic)) out.emplace_back(s.name);
  return out;
}

// Canary hook: the naive evaluator with its deliberately broken K clause.
EvidenceHoldsHook broken_k_hook() {
  return [](const EvidenceModel& m, std::size_t x, std::size_t e,
            const std::optional<WorldSet>& belief, const FormulaPtr& f) {
    NaiveOptions o;
    o.existential_k = true;
    return naive_holds(m, x, e, belief, f, o);
  };
}

}  // namespace

TEST_CASE("scheme tables list each system's axioms in order") {
  CHECK(scheme_names(LogicId::EK) ==
        std::vector<std::string>{"K_K", "T_K", "4_K", "5_K", "K_E", "T_E",
                                 "KE"});
  CHECK(scheme_names(LogicId::EKB) ==
        std::vector<std::string>{"K_K", "T_K", "4_K", "5_K", "K_E", "T_E",
                                 "KE", "K_B", "D_B", "sPI", "KB", "sNI"});
  CHECK(scheme_names(LogicId::EKB_E2).size() == 13);
  CHECK(scheme_names(LogicId::EKB_E2).back() == "BE");
  CHECK(scheme_names(LogicId::EKK) ==
        std::vector<std::string>{"K_K", "T_K", "4_K", "5_K", "K_E", "T_E",
                                 "KE", "K_Box", "T_Box", "4_Box", "KBox"});
  CHECK(scheme_names(LogicId::S4Box) ==
        std::vector<std::string>{"K_Box", "T_Box", "4_Box"});

  // Instantiation plugs metavariables into the advertised shapes.
  const std::vector<AxiomScheme>& ek = axiom_schemes(LogicId::EK);
  CHECK(ek[0].arity == 2);
  CHECK(ek[1].arity == 1);
  FormulaPtr p = atom("p");
  FormulaPtr q = atom("q");
  CHECK(to_text(ek[1].make(p, p)) == to_text(implies(knows(p), p)));
  CHECK(to_text(ek[0].make(p, q)) ==
        to_text(implies(knows(implies(p, q)),
                        implies(knows(p), knows(q)))));
  CHECK(to_text(axiom_schemes(LogicId::EKB_E2).back().make(p, p)) ==
        to_text(implies(believes(p), believes(entails(p)))));
}

TEST_CASE("every logic passes a clean fuzzing run") {
  for (std::size_t i = 0; i < kAllLogics.size(); ++i) {
    LogicId logic = kAllLogics[i];
    CAPTURE(logic_name(logic));
    bool interaction = logic == LogicId::EKK || logic == LogicId::S4Box;
    std::size_t trials = interaction ? 60 : 120;
    FuzzReport rep = fuzz_axioms(logic, trials, 0xC0FFEE + i);
    CHECK(rep.pass());
    CHECK(rep.violation_count == 0);
    CHECK(rep.examples.empty());
    CHECK(rep.logic == logic);
    CHECK(rep.trials == trials);
    CHECK(rep.instances == trials * axiom_schemes(logic).size());
    CHECK(rep.points > 0);
  }
}

TEST_CASE("the mutation canary is caught and reported faithfully") {
  FuzzOptions opts;
  opts.evidence_holds = broken_k_hook();
  FuzzReport rep = fuzz_axioms(LogicId::EK, 150, 7, opts);

  CHECK(!rep.pass());
  CHECK(rep.violation_count > 0);
  CHECK(!rep.examples.empty());
  CHECK(rep.examples.size() <= opts.max_examples);

  std::vector<std::string> names = scheme_names(LogicId::EK);
  for (const FuzzViolation& v : rep.examples) {
    CHECK(std::find(names.begin(), names.end(), v.axiom) != names.end());

    // The record must reproduce: reload the model, re-evaluate the
    // instance. The real clause accepts it (the scheme is sound), the
    // broken clause rejects it — exactly the reported disagreement.
    LoadedModel lm = load_model(v.model);
    const EvidenceModel& m = lm.evidence();
    std::size_t x = m.world(v.world);
    std::size_t e = m.evidence(v.evidence);
    FormulaPtr inst = parse_formula(v.instance);
    CHECK(m.coherence_set(e).test(x));
    CHECK(truth_set(m, e, inst, lm.belief).test(x));
    NaiveOptions broken;
    broken.existential_k = true;
    CHECK(!naive_holds(m, x, e, lm.belief, inst, broken));
  }
}

TEST_CASE("example retention honours max_examples without losing the count") {
  FuzzOptions wide;
  wide.evidence_holds = broken_k_hook();
  FuzzReport full = fuzz_axioms(LogicId::EK, 150, 7, wide);

  FuzzOptions capped = wide;
  capped.max_examples = 2;
  FuzzReport trimmed = fuzz_axioms(LogicId::EK, 150, 7, capped);
  CHECK(trimmed.examples.size() == 2);
  CHECK(trimmed.violation_count == full.violation_count);

  FuzzOptions none = wide;
  none.max_examples = 0;
  FuzzReport bare = fuzz_axioms(LogicId::EK, 150, 7, none);
  CHECK(bare.examples.empty());
  CHECK(bare.violation_count == full.violation_count);
}

TEST_CASE("a faithful hook agrees with the checker across doxastic trials") {
  std::size_t calls = 0;
  FuzzOptions opts;
  opts.evidence_holds = [&calls](const EvidenceModel& m, std::size_t x,
                                 std::size_t e,
                                 const std::optional<WorldSet>& belief,
                                 const FormulaPtr& f) {
    ++calls;
    REQUIRE(belief.has_value());  // only doxastic scenarios reach the hook
    return naive_holds(m, x, e, belief, f);
  };
  FuzzReport rep = fuzz_axioms(LogicId::EKB, 50, 11, opts);
  CHECK(rep.pass());
  CHECK(calls > 0);
}

TEST_CASE("interaction logics ignore the evidence hook") {
  // The hook is an evidence-semantics seam; lattice trials never consult
  // it, so even a reject-everything hook cannot manufacture violations.
  FuzzOptions opts;
  opts.evidence_holds = [](const EvidenceModel&, std::size_t, std::size_t,
                           const std::optional<WorldSet>&,
                           const FormulaPtr&) { return false; };
  CHECK(fuzz_axioms(LogicId::S4Box, 10, 3, opts).pass());
  CHECK(fuzz_axioms(LogicId::EKK, 10, 3, opts).pass());
}

TEST_CASE("reports are deterministic for a fixed seed") {
  std::string clean_a = fuzz_to_json(fuzz_axioms(LogicId::EKB, 40, 99)).dump();
  std::string clean_b = fuzz_to_json(fuzz_axioms(LogicId::EKB, 40, 99)).dump();
  CHECK(clean_a == clean_b);

  // Violation examples — instances, worlds, serialized models — are part
  // of the report, so determinism covers them too.
  FuzzOptions opts;
  opts.evidence_holds = broken_k_hook();
  std::string bad_a = fuzz_to_json(fuzz_axioms(LogicId::EK, 80, 7, opts)).dump();
  std::string bad_b = fuzz_to_json(fuzz_axioms(LogicId::EK, 80, 7, opts)).dump();
  CHECK(bad_a == bad_b);
}

TEST_CASE("report JSON carries the verdict and the examples") {
  nlohmann::json clean = fuzz_to_json(fuzz_axioms(LogicId::S4Box, 20, 5));
  CHECK(clean["logic"] == "S4_Box");
  CHECK(clean["trials"] == 20);
  CHECK(clean["instances"] == 60);
  CHECK(clean["violations"] == 0);
  CHECK(clean["pass"] == true);
  CHECK(clean["examples"].is_array());
  CHECK(clean["examples"].empty());

  FuzzOptions opts;
  opts.evidence_holds = broken_k_hook();
  nlohmann::json bad = fuzz_to_json(fuzz_axioms(LogicId::EK, 100, 7, opts));
  CHECK(bad["pass"] == false);
  CHECK(bad["violations"].get<std::size_t>() > 0);
  REQUIRE(!bad["examples"].empty());
  for (const nlohmann::json& ex : bad["examples"]) {
    CHECK(ex.contains("axiom"));
    CHECK(ex.contains("instance"));
    CHECK(ex.contains("world"));
    CHECK(ex.contains("evidence"));
    CHECK(ex["model"].is_object());
  }
}

TEST_CASE("fuzzing rejects an empty trial budget") {
  CHECK_THROWS_WITH_AS(fuzz_axioms(LogicId::EK, 0, 1),
                       doctest::Contains("at least one trial"), EvalError);
}
