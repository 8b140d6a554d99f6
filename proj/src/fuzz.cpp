#include "evlab/fuzz.hpp"

#include <utility>

#include "evlab/checker.hpp"
#include "evlab/errors.hpp"
#include "evlab/interaction_model.hpp"
#include "evlab/model_io.hpp"

namespace evlab {

namespace {

using F = const FormulaPtr&;

const std::vector<AxiomScheme> kKBlock = {
    {"K_K", 2,
     [](F p, F q) {
       return implies(knows(implies(p, q)), implies(knows(p), knows(q)));
     }},
    {"T_K", 1, [](F p, F) { return implies(knows(p), p); }},
    {"4_K", 1, [](F p, F) { return implies(knows(p), knows(knows(p))); }},
    {"5_K", 1,
     [](F p, F) { return implies(neg(knows(p)), knows(neg(knows(p)))); }},
    {"K_E", 2,
     [](F p, F q) {
       return implies(entails(implies(p, q)),
                      implies(entails(p), entails(q)));
     }},
    {"T_E", 1, [](F p, F) { return implies(entails(p), p); }},
    {"KE", 1, [](F p, F) { return implies(knows(p), entails(p)); }},
};

const std::vector<AxiomScheme> kBBlock = {
    {"K_B", 2,
     [](F p, F q) {
       return implies(believes(implies(p, q)),
                      implies(believes(p), believes(q)));
     }},
    {"D_B", 1,
     [](F p, F) { return implies(believes(p), neg(believes(neg(p)))); }},
    {"sPI", 1, [](F p, F) { return implies(believes(p), knows(believes(p))); }},
    {"KB", 1, [](F p, F) { return implies(knows(p), believes(p)); }},
    {"sNI", 1,
     [](F p, F) {
       return implies(neg(believes(p)), knows(neg(believes(p))));
     }},
};

const AxiomScheme kBE = {
    "BE", 1, [](F p, F) { return implies(believes(p), believes(entails(p))); }};

const std::vector<AxiomScheme> kBoxBlock = {
    {"K_Box", 2,
     [](F p, F q) {
       return implies(box(implies(p, q)), implies(box(p), box(q)));
     }},
    {"T_Box", 1, [](F p, F) { return implies(box(p), p); }},
    {"4_Box", 1, [](F p, F) { return implies(box(p), box(box(p))); }},
};

const AxiomScheme kKBox = {"KBox", 1,
                           [](F p, F) { return implies(knows(p), box(p)); }};

std::vector<AxiomScheme> concat(std::vector<AxiomScheme> a,
                                const std::vector<AxiomScheme>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FormulaProfile instantiation_profile(LogicId logic, int depth) {
  switch (logic) {
    case LogicId::EK: return profile_ek(depth);
    case LogicId::EKB:
    case LogicId::EKB_E2: return profile_ekb(depth);
    case LogicId::EKK: return profile_ekbox(depth);
    case LogicId::S4Box: return profile_box(depth);
  }
  throw EvalError("unknown logic");
}

struct Run {
  FuzzReport& rep;
  const FuzzOptions& opts;

  void record(std::string axiom, std::string instance, std::string world,
              std::string evidence, nlohmann::json model) {
    if (rep.examples.size() < opts.max_examples)
      rep.examples.push_back({std::move(axiom), std::move(instance),
                              std::move(world), std::move(evidence),
                              std::move(model)});
    ++rep.violation_count;
  }

  /// One (model, scheme-instantiations) round on an evidence model,
  /// optionally with a per-state conjecture (belief logics).
  void evidence_trial(const EvidenceModel& m,
                      const std::vector<std::optional<WorldSet>>& belief,
                      const std::vector<AxiomScheme>& schemes,
                      const FormulaProfile& prof, Rng& rng) {
    for (const AxiomScheme& sch : schemes) {
      FormulaPtr a = random_formula(rng, prof);
      FormulaPtr b = sch.arity > 1 ? random_formula(rng, prof) : a;
      FormulaPtr inst = sch.make(a, b);
      ++rep.instances;
      for (std::size_t e = 0; e < m.evidence_count(); ++e) {
        const std::optional<WorldSet>& v =
            belief.empty() ? std::optional<WorldSet>{} : belief[e];
        if (!belief.empty() && !v) continue;  // no doxastic scenario here
        const WorldSet& coh = m.coherence_set(e);
        rep.points += coh.count();
        WorldSet bad(m.world_count());
        if (opts.evidence_holds) {
          for (std::size_t x : ws_members(coh))
            if (!opts.evidence_holds(m, x, e, v, inst)) bad.set(x);
        } else {
          bad = coh & ~truth_set(m, e, inst, v);
        }
        for (std::size_t x : ws_members(bad))
          record(sch.name, to_text(inst), m.world_id(x), m.evidence_id(e),
                 save_model(m, v));
      }
    }
  }

  void interaction_trial(const InteractionModel& m,
                         const std::vector<AxiomScheme>& schemes,
                         const FormulaProfile& prof, Rng& rng) {
    for (const AxiomScheme& sch : schemes) {
      FormulaPtr a = random_formula(rng, prof);
      FormulaPtr b = sch.arity > 1 ? random_formula(rng, prof) : a;
      FormulaPtr inst = sch.make(a, b);
      ++rep.instances;
      for (const InteractionModel::State& s : m.all_states()) {
        const WorldSet& coh = m.coherence(s);
        rep.points += coh.count();
        WorldSet bad = coh & ~m.truth_set(s, inst);
        for (std::size_t x : ws_members(bad))
          record(sch.name, to_text(inst), m.base().world_id(x),
                 m.state_label(s), save_model(m));
      }
    }
  }
};

}  // namespace

const std::vector<AxiomScheme>& axiom_schemes(LogicId logic) {
  static const std::vector<AxiomScheme> ek = kKBlock;
  static const std::vector<AxiomScheme> ekb = concat(kKBlock, kBBlock);
  static const std::vector<AxiomScheme> ekb2 = concat(ekb, {kBE});
  static const std::vector<AxiomScheme> ekk =
      concat(concat(kKBlock, kBoxBlock), {kKBox});
  static const std::vector<AxiomScheme> s4box = kBoxBlock;
  switch (logic) {
    case LogicId::EK: return ek;
    case LogicId::EKB: return ekb;
    case LogicId::EKB_E2: return ekb2;
    case LogicId::EKK: return ekk;
    case LogicId::S4Box: return s4box;
  }
  throw EvalError("unknown logic");
}

FuzzReport fuzz_axioms(LogicId logic, std::size_t trials, std::uint64_t seed,
                       const FuzzOptions& opts) {
  if (trials < 1) throw EvalError("fuzzing needs at least one trial");
  const std::vector<AxiomScheme>& schemes = axiom_schemes(logic);
  const FormulaProfile prof = instantiation_profile(logic, opts.depth);

  FuzzReport rep;
  rep.logic = logic;
  rep.trials = trials;
  Run run{rep, opts};

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng trial = rng.fork();
    switch (logic) {
      case LogicId::EK: {
        EvidenceModel m = random_evidence_model(trial, opts.model);
        run.evidence_trial(m, {}, schemes, prof, trial);
        break;
      }
      case LogicId::EKB:
      case LogicId::EKB_E2: {
        DoxasticSample s = random_doxastic_sample(
            trial, opts.model, /*e2_close=*/logic == LogicId::EKB_E2);
        run.evidence_trial(s.model, s.belief, schemes, prof, trial);
        break;
      }
      case LogicId::EKK:
      case LogicId::S4Box: {
        InteractionModel m = random_interaction_model(trial, opts.model);
        run.interaction_trial(m, schemes, prof, trial);
        break;
      }
    }
  }
  return rep;
}

nlohmann::json fuzz_to_json(const FuzzReport& r) {
  nlohmann::json j;
  j["logic"] = logic_name(r.logic);
  j["trials"] = r.trials;
  j["instances"] = r.instances;
  j["points"] = r.points;
  j["violations"] = r.violation_count;
  j["pass"] = r.pass();
  nlohmann::json ex = nlohmann::json::array();
  for (const FuzzViolation& v : r.examples)
    ex.push_back({{"axiom", v.axiom},
                  {"instance", v.instance},
                  {"world", v.world},
                  {"evidence", v.evidence},
                  {"model", v.model}});
  j["examples"] = ex;
  return j;
}

}  // namespace evlab
