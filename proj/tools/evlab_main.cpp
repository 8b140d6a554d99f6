#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evlab/belief.hpp"
#include "evlab/checker.hpp"
#include "evlab/corpus.hpp"
#include "evlab/errors.hpp"
#include "evlab/fuzz.hpp"
#include "evlab/model_io.hpp"
#include "evlab/parser.hpp"
#include "evlab/random.hpp"
#include "evlab/sat.hpp"
#include "evlab/translate.hpp"

namespace {

using namespace evlab;

// Exit codes are a contract: 0 = positive verdict, 1 = negative verdict,
// 2 = any error (parse, validation, bad flags).
constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t default_bound = 5;
  LoadLimits limits;
  std::size_t translation_cap = 15;
};

bool json_out(const Options& o) { return o.format == "json"; }

void emit(const Options& o, const nlohmann::json& j) {
  if (json_out(o)) std::cout << j.dump(2) << "\n";
}

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i)
    out += (i ? "," : "") + ids[i];
  return out + "}";
}

WorldSet world_set_of(const EvidenceModel& m,
                      const std::vector<std::string>& ids) {
  WorldSet w(m.world_count());
  for (const std::string& id : ids) w.set(m.world(id));
  return w;
}

/// Model references: a file path, or "corpus:NAME" for the built-ins
/// (clock1, clock2, and the gallery).
LoadedModel load_ref(const std::string& ref, const LoadLimits& lim) {
  const std::string prefix = "corpus:";
  if (ref.rfind(prefix, 0) != 0) return load_model_file(ref, lim);
  const std::string name = ref.substr(prefix.size());
  if (name == "clock1") return {clock_example1(), std::nullopt};
  if (name == "clock2") return {clock_example2(), std::nullopt};
  return load_model(gallery_doc(name), lim);
}

std::optional<WorldSet> belief_from_flags(const EvidenceModel& m,
                                          const std::string& belief_csv,
                                          const std::string& belief_file) {
  if (!belief_csv.empty())
    return world_set_of(m, split_ids(belief_csv));
  if (!belief_file.empty()) {
    std::ifstream in(belief_file);
    if (!in) throw Error("cannot open belief file '" + belief_file + "'");
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (!doc.is_array())
      throw Error("belief file must hold a JSON array of world ids");
    std::vector<std::string> ids;
    for (const auto& v : doc) {
      if (!v.is_string())
        throw Error("belief file must hold a JSON array of world ids");
      ids.push_back(v.get<std::string>());
    }
    return world_set_of(m, ids);
  }
  return std::nullopt;
}

std::string set_text(const EvidenceModel& m, const WorldSet& w) {
  return join_ids(m.names(w));
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
  std::string model, formula, world, evidence, belief, belief_file;
  bool trace = false;
  bool strict = false;
};

int run_check(const Options& opts, const CheckArgs& a) {
  LoadedModel loaded = load_ref(a.model, opts.limits);
  FormulaPtr f = parse_formula(a.formula);

  if (std::holds_alternative<RelationalModel>(loaded.model)) {
    const RelationalModel& m = loaded.relational();
    if (!a.evidence.empty())
      throw Error("relational models have no evidence states to select");
    if (a.trace) throw Error("--trace needs an evidence model");
    bool r = relational_holds(m, m.world(a.world), f);
    if (json_out(opts))
      emit(opts, {{"formula", to_text(f)}, {"world", a.world}, {"result", r}});
    else
      std::cout << to_text(f) << " @ " << a.world << ": "
                << (r ? "true" : "false") << "\n";
    return r ? kYes : kNo;
  }

  if (std::holds_alternative<InteractionModel>(loaded.model)) {
    const InteractionModel& m = loaded.interaction();
    if (a.evidence.empty())
      throw Error("interaction models need --evidence with generator ids");
    if (a.trace) throw Error("--trace needs an evidence model");
    InteractionModel::State s = m.state(split_ids(a.evidence));
    std::size_t x = m.base().world(a.world);
    bool r = m.holds(s, x, f);
    if (json_out(opts))
      emit(opts, {{"formula", to_text(f)},
                  {"world", a.world},
                  {"evidence", m.state_label(s)},
                  {"result", r}});
    else
      std::cout << to_text(f) << " @ (" << a.world << ", " << m.state_label(s)
                << "): " << (r ? "true" : "false") << "\n";
    return r ? kYes : kNo;
  }

  const EvidenceModel& m = loaded.evidence();
  if (a.evidence.empty() && m.evidence_count() != 1)
    throw Error("--evidence is required when the model has several states");
  std::size_t e = a.evidence.empty() ? 0 : m.evidence(a.evidence);
  CheckOptions copts{a.strict};
  std::optional<WorldSet> belief =
      belief_from_flags(m, a.belief, a.belief_file);
  if (!belief) belief = loaded.belief;

  bool r;
  std::optional<TraceNode> trace;
  if (belief) {
    DoxasticScenario s = m.doxastic_scenario(m.world(a.world), e, *belief);
    r = holds(m, s, f, copts);
    if (a.trace) trace = explain(m, s, f, copts);
  } else {
    Scenario s = m.scenario(a.world, m.evidence_id(e));
    r = holds(m, s, f, copts);
    if (a.trace) trace = explain(m, s, f, copts);
  }

  if (json_out(opts)) {
    nlohmann::json j = {{"formula", to_text(f)},
                        {"world", a.world},
                        {"evidence", m.evidence_id(e)},
                        {"result", r}};
    if (belief) j["belief"] = m.names(*belief);
    if (trace) j["trace"] = trace_to_json(*trace);
    emit(opts, j);
  } else {
    std::cout << to_text(f) << " @ (" << a.world << ", " << m.evidence_id(e)
              << "): " << (r ? "true" : "false") << "\n";
    if (trace) std::cout << format_trace(*trace);
  }
  return r ? kYes : kNo;
}

// ---- sat / valid ----------------------------------------------------------

struct SatArgs {
  std::string logic, formula, emit_model;
  std::size_t max_worlds = 0;  // 0 = default bound
};

int run_sat(const Options& opts, const SatArgs& a, bool validity) {
  auto logic = logic_from_name(a.logic);
  if (!logic)
    throw Error("unknown logic '" + a.logic +
                "' (have: ek, ekb, ekb2, ekk, s4box)");
  FormulaPtr f = parse_formula(a.formula);
  std::size_t bound = a.max_worlds ? a.max_worlds : opts.default_bound;
  SearchOptions sopts;
  sopts.workers = opts.workers;
  SearchOutcome out = validity ? check_validity(*logic, f, bound, sopts)
                               : find_model(*logic, f, bound, sopts);

  if (!a.emit_model.empty() && out.witness)
    write_model_file(a.emit_model, save_model(out.witness->model));

  if (json_out(opts)) {
    emit(opts, outcome_to_json(out, validity));
  } else {
    const char* verdict = validity
                              ? (out.satisfiable ? "countermodel" : "valid-up-to")
                              : (out.satisfiable ? "satisfiable" : "no-model-up-to");
    std::cout << "verdict: " << verdict << " (bound " << out.bound
              << ", candidates " << out.candidates << ")\n";
    if (out.witness)
      std::cout << "witness: " << out.witness->model.world_count()
                << " worlds, designated " << out.witness->world << "\n";
  }
  const bool positive = validity ? !out.satisfiable : out.satisfiable;
  return positive ? kYes : kNo;
}

// ---- translate ------------------------------------------------------------

struct TranslateArgs {
  std::string from, to, in, out;
  std::size_t verify = 0;  // formula depth; 0 = skip
};

int run_translate(const Options& opts, const TranslateArgs& a) {
  LoadedModel loaded = load_ref(a.in, opts.limits);
  if (!std::holds_alternative<RelationalModel>(loaded.model))
    throw Error("translate expects a relational-kind input document");
  const RelationalModel& m = loaded.relational();
  if (!a.from.empty() && a.from != save_model(m)["kind"].get<std::string>())
    throw Error("input document is '" +
                save_model(m)["kind"].get<std::string>() + "', not '" +
                a.from + "'");

  nlohmann::json out_doc;
  std::string to_kind;
  switch (m.cls()) {
    case RelationalClass::Evidence: {
      out_doc = save_model(relational_to_evidence(m));
      to_kind = "evidence";
      break;
    }
    case RelationalClass::Doxastic: {
      auto [ev, v] = doxastic_to_evidence(m);
      out_doc = save_model(ev, v);
      to_kind = "evidence";
      break;
    }
    case RelationalClass::Knowability: {
      KnowabilityTranslation kt =
          knowability_to_interaction(m, opts.translation_cap);
      out_doc = save_model(kt.model);
      to_kind = "interaction";
      break;
    }
  }
  if (!a.to.empty() && a.to != to_kind)
    throw Error("this input translates to '" + to_kind + "', not '" + a.to +
                "'");
  if (!a.out.empty()) write_model_file(a.out, out_doc);

  std::optional<EquivalenceReport> rep;
  if (a.verify > 0) {
    FormulaProfile prof =
        m.cls() == RelationalClass::Knowability ? profile_ekbox(a.verify)
        : m.cls() == RelationalClass::Doxastic  ? profile_ekb(a.verify)
                                                : profile_ek(a.verify);
    prof.atoms.clear();
    for (const auto& [atom, set] : m.valuation_table()) prof.atoms.push_back(atom);
    if (prof.atoms.empty()) prof.atoms = {"p", "q"};
    Rng rng(opts.seed);
    std::vector<FormulaPtr> formulas;
    for (int i = 0; i < 100; ++i) formulas.push_back(random_formula(rng, prof));
    rep = verify_equivalence(m, formulas);
  }

  if (json_out(opts)) {
    nlohmann::json j = {{"to", to_kind},
                        {"worlds", m.world_count()},
                        {"model", out_doc}};
    if (rep) {
      nlohmann::json mm = nlohmann::json::array();
      for (const auto& mis : rep->mismatches)
        mm.push_back({{"formula", mis.formula},
                      {"world", mis.world},
                      {"relational", mis.relational},
                      {"evidence", mis.evidence}});
      j["verify"] = {{"formulas", rep->formulas},
                     {"points", rep->points},
                     {"mismatches", mm}};
    }
    emit(opts, j);
  } else {
    std::cout << "translated " << save_model(m)["kind"].get<std::string>()
              << " (" << m.world_count() << " worlds) -> " << to_kind << "\n";
    if (rep) {
      if (rep->pass())
        std::cout << "equivalence verified, 0 mismatches (" << rep->points
                  << " points)\n";
      else
        std::cout << "equivalence FAILED: " << rep->mismatches.size()
                  << " mismatches, first at world '"
                  << rep->mismatches.front().world << "' on "
                  << rep->mismatches.front().formula << "\n";
    }
  }
  return (!rep || rep->pass()) ? kYes : kNo;
}

// ---- levels ---------------------------------------------------------------

struct LevelsArgs {
  std::string model, evidence, initial;
  bool permissive = false;
};

int run_levels(const Options& opts, const LevelsArgs& a) {
  LoadedModel loaded = load_ref(a.model, opts.limits);
  const EvidenceModel& m = loaded.evidence();
  if (a.evidence.empty() && m.evidence_count() != 1)
    throw Error("--evidence is required when the model has several states");
  std::size_t e = a.evidence.empty() ? 0 : m.evidence(a.evidence);
  WorldSet v1 = world_set_of(m, split_ids(a.initial));
  LadderOptions lopts;
  lopts.strict_e1 = !a.permissive;
  BeliefLadder lad = ladder(m, e, v1, lopts);

  if (json_out(opts)) {
    emit(opts, ladder_to_json(m, lad));
  } else {
    for (std::size_t i = 0; i < lad.levels.size(); ++i)
      std::cout << "V^" << (i + 1) << " = " << set_text(m, lad.levels[i])
                << "\n";
    std::cout << "closure = " << set_text(m, lad.closure) << "\n";
    if (lad.k_star)
      std::cout << "fixpoint at k* = " << *lad.k_star << "\n";
    else
      std::cout << "no fixpoint (cycle); closure is the union of levels\n";
    if (!lad.nested) std::cout << "note: iteration was not nested\n";
  }
  return kYes;
}

// ---- clock ----------------------------------------------------------------

struct ClockArgs {
  int example = 1;
  std::size_t resolution = 60;
  std::string mu, out;
};

int run_clock(const Options& opts, const ClockArgs& a) {
  EvidenceModel m = [&] {
    if (a.example == 1) return clock_example1(a.resolution);
    std::vector<Mu> grid;
    for (const std::string& s : split_ids(a.mu)) grid.push_back(parse_mu(s));
    return a.mu.empty() ? clock_example2(a.resolution)
                        : clock_example2(a.resolution, grid);
  }();
  nlohmann::json doc = save_model(m);
  if (!a.out.empty()) {
    write_model_file(a.out, doc);
    if (json_out(opts))
      emit(opts, {{"written", a.out},
                  {"worlds", m.world_count()},
                  {"coherent", m.coherence_set(0).count()}});
    else
      std::cout << "clock example " << a.example << ": " << m.world_count()
                << " worlds, " << m.coherence_set(0).count()
                << " coherent; written to " << a.out << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return kYes;
}

// ---- fuzz -----------------------------------------------------------------

struct FuzzArgs {
  std::string logic;
  std::size_t trials = 1000;
  int depth = 3;
};

int run_fuzz(const Options& opts, const FuzzArgs& a) {
  auto logic = logic_from_name(a.logic);
  if (!logic)
    throw Error("unknown logic '" + a.logic +
                "' (have: ek, ekb, ekb2, ekk, s4box)");
  FuzzOptions fopts;
  fopts.depth = a.depth;
  FuzzReport rep = fuzz_axioms(*logic, a.trials, opts.seed, fopts);

  if (json_out(opts)) {
    emit(opts, fuzz_to_json(rep));
  } else {
    std::cout << "fuzz " << logic_name(rep.logic) << ": " << rep.trials
              << " trials, " << rep.instances << " instances, " << rep.points
              << " points, " << rep.violation_count << " violations\n";
    for (const FuzzViolation& v : rep.examples)
      std::cout << "  " << v.axiom << " violated at (" << v.world << ", "
                << v.evidence << "): " << v.instance << "\n";
  }
  return rep.pass() ? kYes : kNo;
}

// ---- validate-model -------------------------------------------------------

int run_validate(const Options& opts, const std::string& in) {
  LoadedModel loaded = load_ref(in, opts.limits);

  if (std::holds_alternative<RelationalModel>(loaded.model)) {
    const RelationalModel& m = loaded.relational();
    if (json_out(opts))
      emit(opts, {{"kind", save_model(m)["kind"]},
                  {"worlds", m.world_count()},
                  {"valid", true}});
    else
      std::cout << save_model(m)["kind"].get<std::string>() << ": "
                << m.world_count() << " worlds, class invariants hold\n";
    return kYes;
  }

  if (std::holds_alternative<InteractionModel>(loaded.model)) {
    const InteractionModel& m = loaded.interaction();
    if (json_out(opts))
      emit(opts, {{"kind", "interaction"},
                  {"worlds", m.world_count()},
                  {"generators", m.generator_count()},
                  {"valid", true}});
    else
      std::cout << "interaction: " << m.world_count() << " worlds, "
                << m.generator_count()
                << " generators, (E1) holds on every generator\n";
    return kYes;
  }

  const EvidenceModel& m = loaded.evidence();
  E1Report e1 = m.check_e1();
  nlohmann::json j = {{"kind", "evidence"},
                      {"worlds", m.world_count()},
                      {"evidence_states", m.evidence_count()},
                      {"e1", e1_report_to_json(m, e1)}};
  if (!json_out(opts)) {
    std::cout << "evidence: " << m.world_count() << " worlds, "
              << m.evidence_count() << " evidence states\n";
    std::cout << "(E1): " << (e1.pass ? "pass" : "fail") << "\n";
    if (!e1.pass)
      for (const E1StateReport& s : e1.states)
        if (!s.pass && s.witness)
          std::cout << "  at " << m.evidence_id(s.evidence) << ": y = "
                    << m.world_id(s.witness->y) << " in I_e("
                    << m.world_id(s.witness->x) << ") but not in I_e(y)\n";
  }
  if (loaded.belief) {
    if (m.evidence_count() == 1) {
      E2Report e2 = m.check_e2(0, *loaded.belief);
      j["e2"] = e2_report_to_json(m, e2);
      if (!json_out(opts))
        std::cout << "belief: " << set_text(m, *loaded.belief) << ", (E2): "
                  << (e2.pass ? "pass" : "fail") << "\n";
    } else if (!json_out(opts)) {
      std::cout << "belief: " << set_text(m, *loaded.belief) << "\n";
    }
  }
  emit(opts, j);
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for evidence, belief, and knowability logics"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  std::string config_path;
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  auto* seed_opt = app.add_option("--seed", opts.seed, "random seed");
  auto* workers_opt =
      app.add_option("--workers", opts.workers, "parallel search workers");
  app.add_option("--config", config_path,
                 "config file (JSON; default from EVLAB_CONFIG)");

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "evaluate a formula at a scenario");
  c_check->add_option("--model", check.model, "model document or corpus:NAME")
      ->required();
  c_check->add_option("--formula", check.formula)->required();
  c_check->add_option("--world", check.world)->required();
  c_check->add_option("--evidence", check.evidence,
                      "evidence id (or generator list for interaction models)");
  auto* bf = c_check->add_option("--belief-file", check.belief_file,
                                 "JSON array of world ids");
  c_check->add_option("--belief", check.belief, "comma-separated world ids")
      ->excludes(bf);
  c_check->add_flag("--trace", check.trace, "print the evaluation trace");
  c_check->add_flag("--strict-e1", check.strict, "reject models violating (E1)");

  SatArgs sat;
  auto* c_sat = app.add_subcommand("sat", "bounded satisfiability search");
  SatArgs valid;
  auto* c_valid = app.add_subcommand("valid", "bounded validity check");
  for (auto [cmd, args] : {std::pair{c_sat, &sat}, std::pair{c_valid, &valid}}) {
    cmd->add_option("--logic", args->logic, "ek | ekb | ekb2 | ekk | s4box")
        ->required();
    cmd->add_option("--formula", args->formula)->required();
    cmd->add_option("--max-worlds", args->max_worlds, "world bound");
    cmd->add_option("--emit-model", args->emit_model,
                    "write the witness model document here");
  }

  TranslateArgs tr;
  auto* c_tr = app.add_subcommand("translate", "relational-to-evidence constructions");
  c_tr->add_option("--from", tr.from, "expected input kind");
  c_tr->add_option("--to", tr.to, "expected output kind");
  c_tr->add_option("--in", tr.in, "input model document")->required();
  c_tr->add_option("--out", tr.out, "output model document");
  c_tr->add_option("--verify", tr.verify,
                   "cross-check equivalence with random formulas of this depth");

  LevelsArgs lv;
  auto* c_lv = app.add_subcommand("levels", "belief ladder V^1, V^2, …");
  c_lv->add_option("--model", lv.model)->required();
  c_lv->add_option("--evidence", lv.evidence);
  c_lv->add_option("--initial", lv.initial, "comma-separated world ids")
      ->required();
  c_lv->add_flag("--permissive", lv.permissive,
                 "allow models violating (E1); report nestedness");

  ClockArgs ck;
  auto* c_ck = app.add_subcommand("clock", "emit a discretized clock model");
  c_ck->add_option("--example", ck.example)->check(CLI::IsMember({1, 2}));
  c_ck->add_option("--resolution", ck.resolution, "grid points per hour circle");
  c_ck->add_option("--mu", ck.mu, "comma-separated precision levels (example 2)");
  c_ck->add_option("--out", ck.out, "write the model document here");

  FuzzArgs fz;
  auto* c_fz = app.add_subcommand("fuzz", "randomized axiom-soundness check");
  c_fz->add_option("--logic", fz.logic)->required();
  c_fz->add_option("--trials", fz.trials);
  c_fz->add_option("--depth", fz.depth, "instantiation depth");

  std::string validate_in;
  auto* c_vm = app.add_subcommand("validate-model", "load and report invariants");
  c_vm->add_option("--in", validate_in, "model document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (config_path.empty())
      if (const char* env = std::getenv("EVLAB_CONFIG")) config_path = env;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error("cannot open config file '" + config_path + "'");
      nlohmann::json cfg = nlohmann::json::parse(in, nullptr, false);
      if (!cfg.is_object())
        throw Error("config file must hold a JSON object");
      if (cfg.contains("max_worlds"))
        opts.default_bound = cfg["max_worlds"].get<std::size_t>();
      if (cfg.contains("max_generators"))
        opts.limits.max_generators = cfg["max_generators"].get<std::size_t>();
      if (cfg.contains("max_lattice_states"))
        opts.limits.max_lattice_states =
            cfg["max_lattice_states"].get<std::size_t>();
      if (cfg.contains("max_translation_worlds"))
        opts.translation_cap =
            cfg["max_translation_worlds"].get<std::size_t>();
      if (cfg.contains("workers") && workers_opt->count() == 0)
        opts.workers = cfg["workers"].get<unsigned>();
      if (cfg.contains("seed") && seed_opt->count() == 0)
        opts.seed = cfg["seed"].get<std::uint64_t>();
    }

    if (c_check->parsed()) return run_check(opts, check);
    if (c_sat->parsed()) return run_sat(opts, sat, false);
    if (c_valid->parsed()) return run_sat(opts, valid, true);
    if (c_tr->parsed()) return run_translate(opts, tr);
    if (c_lv->parsed()) return run_levels(opts, lv);
    if (c_ck->parsed()) return run_clock(opts, ck);
    if (c_fz->parsed()) return run_fuzz(opts, fz);
    if (c_vm->parsed()) return run_validate(opts, validate_in);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
