#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "evlab/corpus.hpp"
#include "evlab/errors.hpp"
#include "evlab/evidence_model.hpp"
#include "evlab/model_io.hpp"
#include "evlab/relational_model.hpp"

using namespace evlab;
using nlohmann::json;

namespace {

EvidenceModel two_world() {
  EvidenceModel::Builder b;
  b.add_world("a").add_world("b").add_evidence("e");
  b.interp("e", "a", {"a", "b"}).interp("e", "b", {"b"});
  b.valuation("p", {"a"});
  return b.build();
}

}  // namespace

TEST_CASE("coherence sets and scenarios") {
  EvidenceModel m = two_world();
  CHECK(m.coherence_set(0).count() == 2);  // a ∈ I(a), b ∈ I(b)
  CHECK(m.coherent(m.world("a"), 0));
  CHECK_NOTHROW(m.scenario("a", "e"));

  // A world whose evidence excludes it is not a scenario point.
  EvidenceModel::Builder b;
  b.add_world("a").add_world("b").add_evidence("e");
  b.interp("e", "a", {"b"}).interp("e", "b", {"b"});
  EvidenceModel m2 = b.build();
  CHECK(!m2.coherent(m2.world("a"), 0));
  CHECK(m2.coherence_set(0).count() == 1);
  try {
    m2.scenario("a", "e");
    FAIL("expected an EvalError");
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("not an evidence scenario") !=
          std::string::npos);
  }
}

TEST_CASE("(E1) report carries a witness") {
  EvidenceModel m = two_world();
  CHECK(m.check_e1().pass);
  CHECK(m.check_e1(0).union_equals_coherence);

  // b ∈ I(a) but b ∉ I(b): (E1) fails with the exact pair reported.
  EvidenceModel::Builder b;
  b.add_world("a").add_world("b").add_evidence("e");
  b.interp("e", "a", {"a", "b"});
  EvidenceModel m2 = b.build();
  E1Report rep = m2.check_e1();
  CHECK(!rep.pass);
  REQUIRE(rep.states.size() == 1);
  REQUIRE(rep.states[0].witness.has_value());
  CHECK(rep.states[0].witness->x == m2.world("a"));
  CHECK(rep.states[0].witness->y == m2.world("b"));
  CHECK(!rep.states[0].union_equals_coherence);
}

TEST_CASE("(E2) checks a candidate belief set") {
  EvidenceModel m = load_model(gallery_doc("chain3")).evidence();
  WorldSet v(m.world_count());
  v.set(m.world("c"));
  CHECK(m.check_e2(0, v).pass);  // I(c) = {c}

  v.reset();
  v.set(m.world("a"));
  E2Report rep = m.check_e2(0, v);  // I(a) = {a,b} spills to b
  CHECK(!rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->first == m.world("a"));
  CHECK(rep.witness->second == m.world("b"));
}

TEST_CASE("doxastic scenarios validate the conjecture") {
  EvidenceModel m = two_world();
  WorldSet v(m.world_count());
  CHECK_THROWS_AS(m.doxastic_scenario(0, 0, v), EvalError);  // empty
  v.set(m.world("a"));
  CHECK_NOTHROW(m.doxastic_scenario(0, 0, v));

  // Conjectures must sit inside U_e.
  EvidenceModel::Builder b;
  b.add_world("a").add_world("b").add_evidence("e");
  b.interp("e", "a", {"a"});
  EvidenceModel m2 = b.build();  // U_e = {a}
  WorldSet bad(2);
  bad.set(m2.world("b"));
  CHECK_THROWS_AS(m2.doxastic_scenario(0, 0, bad), EvalError);
}

TEST_CASE("builder rejects malformed tables") {
  EvidenceModel::Builder b;
  b.add_world("a");
  CHECK_THROWS_AS(b.add_world("a"), ModelError);  // duplicate id
  EvidenceModel::Builder b2;
  CHECK_THROWS_AS(b2.build(), ModelError);  // no worlds
  EvidenceModel::Builder b3;
  b3.add_world("a").add_evidence("e");
  CHECK_THROWS_AS(b3.interp("e", "zz", {"a"}), ModelError);
}

TEST_CASE("documents round-trip byte for byte") {
  const std::string text = R"({
    "kind": "evidence",
    "worlds": ["a", "b"],
    "evidence": ["e"],
    "interpretation": {"e": {"a": ["a", "b"], "b": ["b"]}},
    "valuation": {"p": ["a"]}
  })";
  LoadedModel loaded = load_model_text(text);
  json out = save_model(loaded.evidence());
  CHECK(out == json::parse(text));
  // And the emitted document loads back to the same document.
  CHECK(save_model(load_model(out).evidence()) == out);
}

TEST_CASE("load errors point into the document") {
  auto path_of = [](const json& doc) -> std::string {
    try {
      load_model(doc);
    } catch (const ModelError& e) {
      return e.path;
    }
    return "(no error)";
  };
  json good = gallery_doc("two-world");

  json no_kind = good;
  no_kind.erase("kind");
  CHECK(path_of(no_kind) == "kind");

  json bad_kind = good;
  bad_kind["kind"] = "holograph";
  CHECK(path_of(bad_kind) == "kind");

  json stray_world = good;
  stray_world["interpretation"]["e"]["a"] = {"a", "zz"};
  CHECK(path_of(stray_world) == "interpretation.e.a");

  json stray_val = good;
  stray_val["valuation"]["p"] = {"zz"};
  CHECK(path_of(stray_val) == "valuation.p");

  CHECK(path_of(json::array()) == "");
  CHECK_THROWS_AS(load_model_text("{not json"), ModelError);
}

TEST_CASE("belief fields are validated against coherence") {
  json doc = gallery_doc("two-world");
  doc["belief"] = {"a"};
  LoadedModel loaded = load_model(doc);
  REQUIRE(loaded.belief.has_value());
  CHECK(loaded.evidence().names(*loaded.belief) ==
        std::vector<std::string>{"a"});

  // Single-state models check strictly and name the offending world.
  EvidenceModel::Builder b;
  b.add_world("a").add_world("b").add_evidence("e");
  b.interp("e", "a", {"a"});
  json narrow = save_model(b.build());
  narrow["belief"] = {"b"};
  try {
    load_model(narrow);
    FAIL("expected a ModelError");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
    CHECK(e.path == "belief");
  }

  // Multi-state models accept a belief set fitting any state.
  json multi = gallery_doc("ssm-collapse");
  multi["belief"] = {"3"};  // fits the {3} state, not the {1,2} one
  CHECK_NOTHROW(load_model(multi));
  multi["belief"] = {"1", "3"};  // fits no state
  CHECK_THROWS_AS(load_model(multi), ModelError);
}

TEST_CASE("relational builders enforce the class invariants") {
  {
    RelationalModel::Builder b(RelationalClass::Evidence);
    b.add_world("a").add_world("b");
    b.edge_e("a", "a").edge_e("a", "b");
    try {
      b.build();  // b lacks its reflexive loop
      FAIL("expected a ModelError");
    } catch (const ModelError& e) {
      CHECK(std::string(e.what()).find("lacks its loop") != std::string::npos);
    }
  }
  {
    RelationalModel::Builder b(RelationalClass::Doxastic);
    b.add_world("a").edge_e("a", "a");
    CHECK_THROWS_AS(b.build(), ModelError);  // no belief image
  }
  {
    // 1 R_□ 2 R_□ 3 without 1 R_□ 3: transitivity fails.
    RelationalModel::Builder b(RelationalClass::Knowability);
    b.add_world("1").add_world("2").add_world("3");
    for (auto* w : {"1", "2", "3"}) b.edge_e(w, w).edge_box(w, w);
    b.edge_box("1", "2").edge_box("2", "3");
    try {
      b.build();
      FAIL("expected a ModelError");
    } catch (const ModelError& e) {
      std::string msg = e.what();
      CHECK(msg.find("'1'") != std::string::npos);
      CHECK(msg.find("'3'") != std::string::npos);
    }
  }
  // Relational documents round-trip as well.
  json doc = gallery_doc("upset2");
  CHECK(save_model(load_model(doc).relational()) == doc);
}

TEST_CASE("interaction documents respect the generator cap") {
  json doc;
  doc["kind"] = "interaction";
  doc["worlds"] = json::array({"w"});
  doc["evidence"] = json::array();
  doc["interpretation"] = json::object();
  for (int g = 0; g < 13; ++g) {
    std::string id = "g" + std::to_string(g);
    doc["evidence"].push_back(id);
    doc["interpretation"][id]["w"] = json::array({"w"});
  }
  try {
    load_model(doc);
    FAIL("expected a ModelError");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("12") != std::string::npos);
  }
  LoadLimits wide;
  wide.max_generators = 16;
  CHECK_NOTHROW(load_model(doc, wide));
}

TEST_CASE("world-set rendering is sorted by id") {
  EvidenceModel m = two_world();
  WorldSet w = ws_full(2);
  CHECK(m.names(w) == std::vector<std::string>{"a", "b"});
}
