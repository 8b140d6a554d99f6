#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "evlab/checker.hpp"
#include "evlab/corpus.hpp"
#include "evlab/errors.hpp"
#include "evlab/model_io.hpp"
#include "evlab/random.hpp"
#include "evlab/translate.hpp"
#include "support/naive.hpp"

using namespace evlab;
using evlab::testing::naive_holds;

namespace {

std::vector<FormulaPtr> formula_batch(Rng& rng, const FormulaProfile& prof,
                                      int count) {
  std::vector<FormulaPtr> out;
  for (int i = 0; i < count; ++i) out.push_back(random_formula(rng, prof));
  return out;
}

RelationalModel chain_knowability() {
  RelationalModel::Builder b(RelationalClass::Knowability);
  b.add_world("a").add_world("b").add_world("c");
  for (auto* w : {"a", "b", "c"}) b.edge_e(w, w).edge_box(w, w);
  b.edge_box("a", "b").edge_box("a", "c").edge_box("b", "c");
  b.valuation("p", {"c"});
  return b.build();
}

}  // namespace

TEST_CASE("a relational model reads off as one evidence state") {
  RelationalModel::Builder b(RelationalClass::Evidence);
  b.add_world("a").add_world("b").add_world("c");
  b.edge_e("a", "a").edge_e("a", "b");
  b.edge_e("b", "b").edge_e("b", "c");
  b.edge_e("c", "c");
  b.valuation("p", std::vector<std::string>{"a", "b"});
  EvidenceModel ev = relational_to_evidence(b.build());
  // The image tables become I_e, which is exactly the three-world chain.
  CHECK(save_model(ev) == gallery_doc("chain3"));
  CHECK(ev.coherence_set(0) == ws_full(3));  // reflexivity ⇒ U_e = X
  CHECK(ev.check_e1().pass);

  // With only loops, evidence entails precisely what holds at the world.
  RelationalModel::Builder id(RelationalClass::Evidence);
  id.add_world("a").add_world("b");
  id.edge_e("a", "a").edge_e("b", "b");
  id.valuation("p", {"a"});
  EvidenceModel idm = relational_to_evidence(id.build());
  CHECK(truth_set(idm, 0, entails(atom("p"))) == idm.valuation("p"));
  CHECK(truth_set(idm, 0, knows(atom("p"))).none());
}

TEST_CASE("evidence-class equivalence on random models") {
  Rng rng(20240901);
  ModelProfile prof;
  prof.max_worlds = 6;
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork();
    RelationalModel m = random_relational_model(sub, RelationalClass::Evidence,
                                                prof);
    // L_{E,K} gets the deeper run; a few depth-4 formulas keep it honest.
    FormulaProfile fp = profile_ek(trial % 4 == 0 ? 4 : 3);
    EquivalenceReport rep = verify_equivalence(m, formula_batch(sub, fp, 20));
    CHECK(rep.pass());
    CHECK(rep.formulas == 20);
    CHECK(rep.points == 20 * m.world_count());
    if (!rep.pass())
      MESSAGE("first mismatch: " << rep.mismatches[0].formula << " at "
                                 << rep.mismatches[0].world);
  }
}

TEST_CASE("doxastic-class equivalence and the extracted conjecture") {
  Rng rng(20240902);
  ModelProfile prof;
  prof.max_worlds = 6;
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork();
    bool closed = trial % 2 == 0;
    RelationalModel m = random_relational_model(sub, RelationalClass::Doxastic,
                                                prof, closed);
    EquivalenceReport rep =
        verify_equivalence(m, formula_batch(sub, profile_ekb(3), 20));
    CHECK(rep.pass());

    auto [ev, v] = doxastic_to_evidence(m);
    CHECK(v == m.belief_image());
    // R_E-closed belief images translate to (E2)-closed conjectures.
    if (closed) CHECK(ev.check_e2(0, v).pass);
  }
}

TEST_CASE("knowability-class equivalence on random models") {
  Rng rng(20240903);
  ModelProfile prof;
  prof.max_worlds = 5;
  for (int trial = 0; trial < 80; ++trial) {
    Rng sub = rng.fork();
    RelationalModel m =
        random_relational_model(sub, RelationalClass::Knowability, prof);
    EquivalenceReport rep =
        verify_equivalence(m, formula_batch(sub, profile_ekbox(3), 20));
    CHECK(rep.pass());
    if (!rep.pass())
      MESSAGE("first mismatch: " << rep.mismatches[0].formula << " at "
                                 << rep.mismatches[0].world);
  }
}

TEST_CASE("subset spaces become constant evidence states") {
  EvidenceModel m = subset_space_to_evidence(
      {"1", "2", "3"}, {{"1", "2"}, {"3"}}, {{"p", {"1"}}, {"q", {"3"}}});
  CHECK(save_model(m) == gallery_doc("ssm-collapse"));
  CHECK(m.evidence_ids() == std::vector<std::string>{"u0", "u1"});
  CHECK(m.names(m.coherence_set(0)) == std::vector<std::string>{"1", "2"});
  CHECK(m.names(m.coherence_set(1)) == std::vector<std::string>{"3"});
  CHECK_THROWS_AS(subset_space_to_evidence({"1"}, {}, {}), ModelError);

  // Constant interpretations collapse K and E at every scenario.
  Rng rng(20240904);
  FormulaProfile fp = profile_ek(3);
  for (int i = 0; i < 50; ++i) {
    FormulaPtr f = random_formula(rng, fp);
    for (std::size_t e = 0; e < m.evidence_count(); ++e)
      CHECK(truth_set(m, e, knows(f)) == truth_set(m, e, entails(f)));
  }
}

TEST_CASE("upsets of the preorder become generators") {
  KnowabilityTranslation kt =
      knowability_to_interaction(load_model(gallery_doc("upset2")).relational());
  REQUIRE(kt.upsets.size() == 3);  // ∅, {2}, {1,2}
  CHECK(kt.upsets[0].none());
  const EvidenceModel& base = kt.model.base();
  CHECK(base.names(kt.upsets[1]) == std::vector<std::string>{"2"});
  CHECK(base.names(kt.upsets[2]) == std::vector<std::string>{"1", "2"});
  for (std::size_t i = 0; i < kt.upsets.size(); ++i)
    CHECK(kt.model.coherence(kt.model.singleton(i)) == kt.upsets[i]);

  // p is knowable exactly where the relation already settles it.
  RelationalModel rel = load_model(gallery_doc("upset2")).relational();
  CHECK(relational_holds(rel, rel.world("2"), box(atom("p"))));
  CHECK(!relational_holds(rel, rel.world("1"), box(atom("p"))));
  CHECK(kt.model.holds(kt.designated, base.world("2"), box(atom("p"))));
  CHECK(!kt.model.holds(kt.designated, base.world("1"), box(atom("p"))));
}

TEST_CASE("upset families for the standard preorders") {
  {
    RelationalModel::Builder b(RelationalClass::Knowability);
    b.add_world("a").add_world("b").add_world("c");
    for (auto* w : {"a", "b", "c"}) b.edge_e(w, w).edge_box(w, w);
    KnowabilityTranslation kt = knowability_to_interaction(b.build());
    CHECK(kt.upsets.size() == 8);  // identity: every subset is up-closed
  }
  {
    KnowabilityTranslation kt = knowability_to_interaction(chain_knowability());
    REQUIRE(kt.upsets.size() == 4);  // ∅ ⊂ {c} ⊂ {b,c} ⊂ {a,b,c}
    const EvidenceModel& base = kt.model.base();
    CHECK(base.names(kt.upsets[1]) == std::vector<std::string>{"c"});
    CHECK(base.names(kt.upsets[2]) == std::vector<std::string>{"b", "c"});
  }
  CHECK_THROWS_AS(knowability_to_interaction(chain_knowability(), 2), EvalError);
}

TEST_CASE("relational evaluation gates operators by class") {
  RelationalModel::Builder b(RelationalClass::Evidence);
  b.add_world("a").edge_e("a", "a");
  RelationalModel m = b.build();
  CHECK_THROWS_AS(relational_truth_set(m, believes(atom("p"))), EvalError);
  CHECK_THROWS_AS(relational_truth_set(m, box(atom("p"))), EvalError);
  CHECK_THROWS_AS(relational_truth_set(m, effort_box(atom("p"))), EvalError);
  CHECK_THROWS_AS(relational_truth_set(m, effort_diamond(atom("p"))), EvalError);
  CHECK(relational_truth_set(m, disj(atom("p"), neg(atom("p")))) == ws_full(1));
}

TEST_CASE("relational and naive evidence verdicts coincide") {
  // Independent path around verify_equivalence: translate, then compare
  // against the plain recursive evaluator instead of the memo checker.
  Rng rng(20240905);
  ModelProfile prof;
  prof.max_worlds = 5;
  FormulaProfile fp = profile_ek(3);
  for (int trial = 0; trial < 50; ++trial) {
    Rng sub = rng.fork();
    RelationalModel m = random_relational_model(sub, RelationalClass::Evidence,
                                                prof);
    EvidenceModel ev = relational_to_evidence(m);
    FormulaPtr f = random_formula(sub, fp);
    for (std::size_t x = 0; x < m.world_count(); ++x)
      CHECK(relational_holds(m, x, f) ==
            naive_holds(ev, x, 0, std::nullopt, f));
  }
}
