#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "evlab/corpus.hpp"
#include "evlab/errors.hpp"
#include "evlab/interaction_model.hpp"
#include "evlab/model_io.hpp"
#include "evlab/random.hpp"
#include "support/naive.hpp"

using namespace evlab;
using evlab::testing::naive_interaction_holds;

namespace {

FormulaProfile full_profile(int depth) {
  FormulaProfile prof;
  prof.atoms = {"p", "q"};
  prof.max_depth = depth;
  prof.operators = {Op::Not,     Op::And,  Op::Or,        Op::Implies,
                    Op::Knows,   Op::Entails, Op::Box,    Op::Diamond,
                    Op::EffortBox, Op::EffortDiamond};
  return prof;
}

FormulaProfile propositional_profile(int depth) {
  FormulaProfile prof;
  prof.atoms = {"p", "q", "r"};
  prof.max_depth = depth;
  prof.operators = {Op::Not, Op::And, Op::Or, Op::Implies};
  return prof;
}

}  // namespace

TEST_CASE("constant generators: knowable without being known") {
  InteractionModel m = load_model(gallery_doc("const-gen")).interaction();
  CHECK(m.generator_count() == 2);
  CHECK(m.distinct_interpretations() == 3);  // g1, g2, and their meet

  auto s1 = m.state({"g1"});
  std::size_t b = m.base().world("b");
  CHECK(m.holds(s1, b, box(atom("p"))));
  CHECK(!m.holds(s1, b, knows(atom("p"))));
  CHECK(m.holds(s1, b, effort_box(knows(atom("p")))));

  // Combining both reports pins the valuation down.
  auto s12 = m.state({"g1", "g2"});
  CHECK(m.state_label(s12) == "{g1,g2}");
  CHECK(m.coherence(s12) == m.base().valuation("p"));
  CHECK(m.holds(s12, b, knows(atom("p"))));
}

TEST_CASE("states form a meet-semilattice under combination") {
  Rng rng(20240825);
  ModelProfile prof;
  prof.max_worlds = 5;
  prof.max_evidence = 3;
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork();
    InteractionModel m = random_interaction_model(sub, prof);
    std::vector<InteractionModel::State> states = m.all_states();
    for (const auto& a : states)
      for (const auto& b : states) {
        auto ab = m.meet(a, b);
        CHECK(ab == m.meet(b, a));
        CHECK(m.meet(a, a) == a);
        CHECK(m.leq(ab, a));
        CHECK(m.leq(ab, b));
        // ≤ means "at least as much evidence": the meet of the parts.
        CHECK((m.leq(a, b) == (ab == a)));
      }
  }
}

TEST_CASE("combination intersects interpretations and coherence") {
  Rng rng(20240826);
  ModelProfile prof;
  prof.max_worlds = 5;
  prof.max_evidence = 3;
  for (int trial = 0; trial < 150; ++trial) {
    Rng sub = rng.fork();
    InteractionModel m = random_interaction_model(sub, prof);
    std::vector<InteractionModel::State> states = m.all_states();
    for (const auto& a : states) {
      for (const auto& b : states) {
        auto ab = m.meet(a, b);
        CHECK(m.coherence(ab) == (m.coherence(a) & m.coherence(b)));
        for (std::size_t x = 0; x < m.world_count(); ++x)
          CHECK(m.interp_at(ab, x) == (m.interp_at(a, x) & m.interp_at(b, x)));
      }
      // Every derived state keeps (E1): interpretations stay coherent.
      for (std::size_t x = 0; x < m.world_count(); ++x) {
        CHECK(ws_first_outside(m.interp_at(a, x), m.coherence(a)) ==
              WorldSet::npos);
        // More evidence never widens an interpretation.
        for (const auto& b : states)
          if (m.leq(a, b))
            CHECK(m.interp_at(a, x).is_subset_of(m.interp_at(b, x)));
      }
    }
  }
}

TEST_CASE("knowability satisfies the S4 laws at every state") {
  Rng rng(20240827);
  ModelProfile prof;
  prof.max_worlds = 5;
  prof.max_evidence = 3;
  FormulaProfile fp = full_profile(2);
  for (int trial = 0; trial < 150; ++trial) {
    Rng sub = rng.fork();
    InteractionModel m = random_interaction_model(sub, prof);
    FormulaPtr p = random_formula(sub, fp);
    FormulaPtr q = random_formula(sub, fp);
    std::vector<FormulaPtr> axioms = {
        implies(box(implies(p, q)), implies(box(p), box(q))),
        implies(box(p), p),
        implies(box(p), box(box(p))),
        implies(knows(p), box(p)),  // known implies knowable
        effort_box(top()),          // some intake always succeeds
    };
    for (const auto& s : m.all_states())
      for (const auto& ax : axioms)
        CHECK(m.truth_set(s, ax) == m.coherence(s));
  }
}

TEST_CASE("knowable coincides with knowledge after intake") {
  Rng rng(20240828);
  ModelProfile prof;
  prof.max_worlds = 5;
  prof.max_evidence = 3;
  FormulaProfile fp = propositional_profile(3);
  for (int trial = 0; trial < 150; ++trial) {
    Rng sub = rng.fork();
    InteractionModel m = random_interaction_model(sub, prof);
    FormulaPtr p = random_formula(sub, fp);
    for (const auto& s : m.all_states())
      CHECK(m.truth_set(s, box(p)) ==
            m.truth_set(s, effort_box(knows(p))));
  }
}

TEST_CASE("evaluation agrees with subset-lattice quantification") {
  // The model quantifies □ and effort over deduplicated interpretation
  // tables; the reference walks every generator mask. Same verdicts.
  Rng rng(20240829);
  ModelProfile prof;
  prof.max_worlds = 4;
  prof.max_evidence = 3;
  FormulaProfile fp = full_profile(3);
  for (int trial = 0; trial < 120; ++trial) {
    Rng sub = rng.fork();
    InteractionModel m = random_interaction_model(sub, prof);
    FormulaPtr f = random_formula(sub, fp);
    const std::uint64_t total = std::uint64_t{1} << m.generator_count();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      WorldSet ts = m.truth_set(m.state_from_mask(mask), f);
      for (std::size_t x = 0; x < m.world_count(); ++x)
        CHECK(ts.test(x) == naive_interaction_holds(m.base(), mask, x, f));
    }
  }
}

TEST_CASE("truth sets stay within coherence") {
  Rng rng(20240830);
  ModelProfile prof;
  prof.max_worlds = 5;
  prof.max_evidence = 3;
  FormulaProfile fp = full_profile(3);
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork();
    InteractionModel m = random_interaction_model(sub, prof);
    FormulaPtr f = random_formula(sub, fp);
    for (const auto& s : m.all_states())
      CHECK(m.truth_set(s, f).is_subset_of(m.coherence(s)));
  }
}

TEST_CASE("the base must satisfy (E1)") {
  EvidenceModel::Builder b;
  b.add_world("a").add_world("b").add_evidence("e");
  b.interp("e", "a", {"a", "b"});
  try {
    InteractionModel::over(b.build());
    FAIL("expected a ModelError");
  } catch (const ModelError& e) {
    CHECK(e.path == "interpretation.e");
    std::string msg = e.what();
    CHECK(msg.find("'a'") != std::string::npos);
    CHECK(msg.find("'b'") != std::string::npos);
  }
}

TEST_CASE("the lattice cap counts distinct interpretations") {
  // Three pairwise-different generators whose meets are new tables.
  EvidenceModel::Builder b;
  b.add_world("a").add_world("b").add_world("c");
  b.add_evidence("g1").add_evidence("g2").add_evidence("g3");
  for (auto* w : {"a", "b", "c"}) {
    b.interp("g1", w, {"a", "b"});
    b.interp("g2", w, {"b", "c"});
    b.interp("g3", w, {"a", "b", "c"});
  }
  // Constant tables keep (E1): every world shares the same image.
  EvidenceModel base = b.build();
  CHECK(base.check_e1().pass);
  CHECK_NOTHROW(InteractionModel::over(base));
  try {
    InteractionModel::over(base, 2);
    FAIL("expected a ModelError");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("state construction is validated") {
  InteractionModel m = load_model(gallery_doc("const-gen")).interaction();
  CHECK_THROWS_AS(m.state({}), EvalError);
  CHECK_THROWS_AS(m.state({"zz"}), EvalError);
  CHECK_THROWS_AS(m.state_from_mask(0), EvalError);
  CHECK_THROWS_AS(m.singleton(7), EvalError);
  // b is the only world coherent with the combined state.
  auto s12 = m.state({"g1", "g2"});
  CHECK_THROWS_AS(m.holds(s12, m.base().world("a"), top()), EvalError);
  // B has no reading over interaction states.
  CHECK_THROWS_AS(m.truth_set(s12, believes(atom("p"))), EvalError);
}
