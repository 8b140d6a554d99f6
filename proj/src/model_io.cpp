#include "evlab/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "evlab/errors.hpp"

namespace evlab {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg, const std::string& path) {
  throw ModelError(msg + (path.empty() ? "" : " (at " + path + ")"), path);
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) bad(std::string("missing field '") + name + "'", name);
  return *it;
}

std::vector<std::string> id_list(const json& j, const std::string& path) {
  if (!j.is_array()) bad("expected an array of ids", path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      bad("expected a string id", path + "[" + std::to_string(i) + "]");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

/// Shared by the evidence and interaction kinds.
EvidenceModel load_evidence_tables(const json& doc) {
  EvidenceModel::Builder b;
  for (const auto& id : id_list(field(doc, "worlds"), "worlds")) {
    try {
      b.add_world(id);
    } catch (const ModelError& e) {
      bad(e.what(), "worlds");
    }
  }
  for (const auto& id : id_list(field(doc, "evidence"), "evidence")) {
    try {
      b.add_evidence(id);
    } catch (const ModelError& e) {
      bad(e.what(), "evidence");
    }
  }
  const json& interp = field(doc, "interpretation");
  if (!interp.is_object()) bad("expected an object", "interpretation");
  for (const auto& [eid, row] : interp.items()) {
    std::string epath = "interpretation." + eid;
    if (!row.is_object()) bad("expected an object", epath);
    for (const auto& [wid, image] : row.items()) {
      std::string wpath = epath + "." + wid;
      try {
        b.interp(eid, wid, id_list(image, wpath));
      } catch (const ModelError& e) {
        bad(e.what(), wpath);
      }
    }
  }
  if (auto it = doc.find("valuation"); it != doc.end()) {
    if (!it->is_object()) bad("expected an object", "valuation");
    for (const auto& [atom, worlds] : it->items()) {
      std::string vpath = "valuation." + atom;
      try {
        b.valuation(atom, id_list(worlds, vpath));
      } catch (const ModelError& e) {
        bad(e.what(), vpath);
      }
    }
  }
  try {
    return b.build();
  } catch (const ModelError& e) {
    bad(e.what(), e.path);
  }
}

WorldSet load_belief(const EvidenceModel& m, const json& doc) {
  WorldSet v = ws_empty(m.world_count());
  std::size_t i = 0;
  for (const auto& id : id_list(field(doc, "belief"), "belief")) {
    auto w = m.find_world(id);
    if (!w)
      bad("unknown world id: '" + id + "'",
          "belief[" + std::to_string(i) + "]");
    v.set(*w);
    ++i;
  }
  if (v.none()) bad("belief set must be nonempty", "belief");
  // Against a single evidence state the containment V ⊆ U_e is checked
  // strictly; with several states the set must fit at least one of them.
  if (m.evidence_count() == 1) {
    std::size_t stray = ws_first_outside(v, m.coherence_set(0));
    if (stray != WorldSet::npos)
      bad("belief set reaches outside U_" + m.evidence_id(0) + ": world '" +
              m.world_id(stray) + "'",
          "belief");
  } else {
    bool fits = false;
    for (std::size_t e = 0; e < m.evidence_count() && !fits; ++e)
      fits = v.is_subset_of(m.coherence_set(e));
    if (!fits)
      bad("belief set fits no evidence state's coherence set", "belief");
  }
  return v;
}

RelationalModel load_relational(const json& doc, RelationalClass cls) {
  RelationalModel::Builder b(cls);
  for (const auto& id : id_list(field(doc, "worlds"), "worlds")) {
    try {
      b.add_world(id);
    } catch (const ModelError& e) {
      bad(e.what(), "worlds");
    }
  }
  auto load_pairs = [&](const char* name, auto&& add) {
    const json& rel = field(doc, name);
    if (!rel.is_array()) bad("expected an array of [from,to] pairs", name);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      std::string ppath = std::string(name) + "[" + std::to_string(i) + "]";
      const json& pair = rel[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string())
        bad("expected an [from,to] id pair", ppath);
      try {
        add(pair[0].get<std::string>(), pair[1].get<std::string>());
      } catch (const ModelError& e) {
        bad(e.what(), ppath);
      }
    }
  };
  load_pairs("R_E", [&](const std::string& f, const std::string& t) {
    b.edge_e(f, t);
  });
  if (cls == RelationalClass::Doxastic) {
    // R_B pairs must realize a constant nonempty image.
    std::map<std::string, std::vector<std::string>> images;
    load_pairs("R_B", [&](const std::string& f, const std::string& t) {
      images[f].push_back(t);
    });
    std::vector<std::string> common;
    bool first = true;
    for (auto& [from, tos] : images) {
      std::sort(tos.begin(), tos.end());
      tos.erase(std::unique(tos.begin(), tos.end()), tos.end());
      if (first) {
        common = tos;
        first = false;
      } else if (tos != common) {
        bad("R_B image differs between worlds ('" + images.begin()->first +
                "' vs '" + from + "'); the doxastic class requires a constant image",
            "R_B");
      }
    }
    if (images.empty()) bad("R_B must be nonempty", "R_B");
    std::size_t missing = 0;
    for (const auto& id : id_list(field(doc, "worlds"), "worlds"))
      if (!images.count(id)) ++missing;
    if (missing)
      bad("R_B must relate every world to the common image", "R_B");
    try {
      b.belief(common);
    } catch (const ModelError& e) {
      bad(e.what(), "R_B");
    }
  }
  if (cls == RelationalClass::Knowability)
    load_pairs("R_Box", [&](const std::string& f, const std::string& t) {
      b.edge_box(f, t);
    });
  if (auto it = doc.find("valuation"); it != doc.end()) {
    if (!it->is_object()) bad("expected an object", "valuation");
    for (const auto& [atom, worlds] : it->items()) {
      std::string vpath = "valuation." + atom;
      try {
        b.valuation(atom, id_list(worlds, vpath));
      } catch (const ModelError& e) {
        bad(e.what(), vpath);
      }
    }
  }
  try {
    return b.build();
  } catch (const ModelError& e) {
    bad(e.what(), e.path);
  }
}

json ids_json(const std::vector<std::string>& ids) { return json(ids); }

json set_json(const EvidenceModel& m, const WorldSet& w) {
  return json(m.names(w));
}

}  // namespace

LoadedModel load_model(const nlohmann::json& doc, const LoadLimits& lim) {
  if (!doc.is_object()) bad("model document must be a JSON object", "");
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) bad("expected a string", "kind");
  const std::string k = kind.get<std::string>();

  if (k == "evidence") {
    LoadedModel out{load_evidence_tables(doc), std::nullopt};
    if (doc.contains("belief"))
      out.belief = load_belief(std::get<EvidenceModel>(out.model), doc);
    return out;
  }
  if (k == "interaction") {
    EvidenceModel base = load_evidence_tables(doc);
    if (base.evidence_count() > lim.max_generators)
      bad("interaction documents are capped at " +
              std::to_string(lim.max_generators) + " generators",
          "evidence");
    try {
      return {InteractionModel::over(std::move(base), lim.max_lattice_states),
              std::nullopt};
    } catch (const ModelError& e) {
      bad(e.what(), e.path);
    }
  }
  if (k == "relational")
    return {load_relational(doc, RelationalClass::Evidence), std::nullopt};
  if (k == "relational-doxastic")
    return {load_relational(doc, RelationalClass::Doxastic), std::nullopt};
  if (k == "relational-knowability")
    return {load_relational(doc, RelationalClass::Knowability), std::nullopt};
  bad("unknown model kind '" + k + "'", "kind");
}

LoadedModel load_model_text(const std::string& text, const LoadLimits& lim) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) bad("document is not valid JSON", "");
  return load_model(doc, lim);
}

LoadedModel load_model_file(const std::string& path, const LoadLimits& lim) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model_text(buf.str(), lim);
}

nlohmann::json save_model(const EvidenceModel& m,
                          const std::optional<WorldSet>& belief) {
  json doc;
  doc["kind"] = "evidence";
  doc["worlds"] = ids_json(m.world_ids());
  doc["evidence"] = ids_json(m.evidence_ids());
  json interp = json::object();
  for (std::size_t e = 0; e < m.evidence_count(); ++e) {
    json row = json::object();
    for (std::size_t x = 0; x < m.world_count(); ++x)
      if (m.interp(e, x).any())
        row[m.world_id(x)] = set_json(m, m.interp(e, x));
    interp[m.evidence_id(e)] = std::move(row);
  }
  doc["interpretation"] = std::move(interp);
  json val = json::object();
  for (const auto& [atom, ws] : m.valuation_table())
    val[atom] = set_json(m, ws);
  doc["valuation"] = std::move(val);
  if (belief) doc["belief"] = set_json(m, *belief);
  return doc;
}

nlohmann::json save_model(const InteractionModel& m) {
  json doc = save_model(m.base());
  doc["kind"] = "interaction";
  return doc;
}

nlohmann::json save_model(const RelationalModel& m) {
  json doc;
  switch (m.cls()) {
    case RelationalClass::Evidence: doc["kind"] = "relational"; break;
    case RelationalClass::Doxastic: doc["kind"] = "relational-doxastic"; break;
    case RelationalClass::Knowability:
      doc["kind"] = "relational-knowability";
      break;
  }
  doc["worlds"] = ids_json(m.world_ids());
  auto pairs = [&](auto image_of) {
    json out = json::array();
    for (std::size_t x = 0; x < m.world_count(); ++x)
      for (std::size_t y : ws_members(image_of(x)))
        out.push_back(json::array({m.world_id(x), m.world_id(y)}));
    return out;
  };
  doc["R_E"] = pairs([&](std::size_t x) -> const WorldSet& { return m.r_e(x); });
  if (m.cls() == RelationalClass::Doxastic)
    doc["R_B"] =
        pairs([&](std::size_t) -> const WorldSet& { return m.belief_image(); });
  if (m.cls() == RelationalClass::Knowability)
    doc["R_Box"] =
        pairs([&](std::size_t x) -> const WorldSet& { return m.r_box(x); });
  json val = json::object();
  for (const auto& [atom, ws] : m.valuation_table()) {
    std::vector<std::string> ids;
    for (std::size_t i : ws_members(ws)) ids.push_back(m.world_id(i));
    std::sort(ids.begin(), ids.end());
    val[atom] = json(ids);
  }
  doc["valuation"] = std::move(val);
  return doc;
}

void write_model_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write model file: " + path);
  out << doc.dump(2) << "\n";
}

nlohmann::json trace_to_json(const TraceNode& t) {
  json node;
  node["clause"] = t.clause;
  node["formula"] = t.formula;
  node["world"] = t.world;
  node["result"] = t.result;
  if (!t.sets.empty()) {
    json sets = json::object();
    for (const auto& [label, ids] : t.sets) sets[label] = json(ids);
    node["sets"] = std::move(sets);
  }
  if (t.witness) node["witness"] = *t.witness;
  if (!t.children.empty()) {
    json kids = json::array();
    for (const auto& c : t.children) kids.push_back(trace_to_json(c));
    node["children"] = std::move(kids);
  }
  return node;
}

nlohmann::json e1_report_to_json(const EvidenceModel& m, const E1Report& r) {
  json out;
  out["pass"] = r.pass;
  json states = json::array();
  for (const auto& st : r.states) {
    json s;
    s["evidence"] = m.evidence_id(st.evidence);
    s["pass"] = st.pass;
    if (st.witness)
      s["witness"] = {{"x", m.world_id(st.witness->x)},
                      {"y", m.world_id(st.witness->y)}};
    else
      s["union_equals_coherence"] = st.union_equals_coherence;
    states.push_back(std::move(s));
  }
  out["states"] = std::move(states);
  return out;
}

nlohmann::json e2_report_to_json(const EvidenceModel& m, const E2Report& r) {
  json out;
  out["pass"] = r.pass;
  if (r.witness)
    out["witness"] = {{"y", m.world_id(r.witness->first)},
                      {"escapes_to", m.world_id(r.witness->second)}};
  return out;
}

nlohmann::json ladder_to_json(const EvidenceModel& m, const BeliefLadder& l) {
  json out;
  out["evidence"] = m.evidence_id(l.evidence);
  json levels = json::array();
  for (const auto& v : l.levels) levels.push_back(set_json(m, v));
  out["levels"] = std::move(levels);
  out["closure"] = set_json(m, l.closure);
  if (l.k_star) out["k_star"] = *l.k_star;
  out["nested"] = l.nested;
  return out;
}

}  // namespace evlab
