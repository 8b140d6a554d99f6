#include "evlab/translate.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "evlab/checker.hpp"
#include "evlab/errors.hpp"

namespace evlab {
namespace {

EvidenceModel single_state_model(const RelationalModel& m) {
  EvidenceModel::Builder b;
  for (const auto& id : m.world_ids()) b.add_world(id);
  b.add_evidence("e");
  for (std::size_t x = 0; x < m.world_count(); ++x) b.interp(0, x, m.r_e(x));
  for (const auto& [atom, ws] : m.valuation_table()) b.valuation(atom, ws);
  return b.build();
}

}  // namespace

EvidenceModel relational_to_evidence(const RelationalModel& m) {
  if (m.cls() != RelationalClass::Evidence)
    throw EvalError("relational_to_evidence expects the evidence class");
  return single_state_model(m);
}

std::pair<EvidenceModel, WorldSet> doxastic_to_evidence(
    const RelationalModel& m) {
  if (m.cls() != RelationalClass::Doxastic)
    throw EvalError("doxastic_to_evidence expects the doxastic class");
  return {single_state_model(m), m.belief_image()};
}

EvidenceModel subset_space_to_evidence(
    const std::vector<std::string>& worlds,
    const std::vector<std::vector<std::string>>& family,
    const std::map<std::string, std::vector<std::string>>& valuation) {
  if (family.empty())
    throw ModelError("subset-space translation needs a nonempty family");
  EvidenceModel::Builder b;
  for (const auto& id : worlds) b.add_world(id);
  for (std::size_t i = 0; i < family.size(); ++i)
    b.add_evidence("u" + std::to_string(i));
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::string eid = "u" + std::to_string(i);
    for (const auto& x : worlds) b.interp(eid, x, family[i]);
  }
  for (const auto& [atom, ids] : valuation) b.valuation(atom, ids);
  return b.build();
}

KnowabilityTranslation knowability_to_interaction(const RelationalModel& m,
                                                  std::size_t max_worlds) {
  if (m.cls() != RelationalClass::Knowability)
    throw EvalError("knowability_to_interaction expects the knowability class");
  const std::size_t n = m.world_count();
  if (n > max_worlds)
    throw EvalError("knowability translation capped at " +
                    std::to_string(max_worlds) + " worlds");

  // Upward-closed sets of the preorder: S with R_□(x) ⊆ S for all x ∈ S.
  std::vector<WorldSet> upsets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    WorldSet s(n, 0);
    for (std::size_t x = 0; x < n; ++x)
      if (mask & (std::uint64_t{1} << x)) s.set(x);
    bool up = true;
    for (auto x = s.find_first(); up && x != WorldSet::npos; x = s.find_next(x))
      up = m.r_box(x).is_subset_of(s);
    if (up) upsets.push_back(std::move(s));
  }

  EvidenceModel::Builder b;
  for (const auto& id : m.world_ids()) b.add_world(id);
  for (std::size_t i = 0; i < upsets.size(); ++i)
    b.add_evidence("u" + std::to_string(i));
  for (std::size_t i = 0; i < upsets.size(); ++i)
    for (std::size_t x = 0; x < n; ++x)
      b.interp(i, x, upsets[i] & m.r_e(x));
  for (const auto& [atom, ws] : m.valuation_table()) b.valuation(atom, ws);

  // The upset family is intersection-closed, so the interaction closure
  // cannot outgrow it; still leave headroom over the default cap.
  std::size_t cap = std::max<std::size_t>(InteractionModel::kDefaultMaxStates,
                                          upsets.size());
  InteractionModel im = InteractionModel::over(b.build(), cap);
  // The full set is always an upset and lands at the final position.
  InteractionModel::State designated = im.singleton(upsets.size() - 1);
  return {std::move(im), std::move(designated), std::move(upsets)};
}

namespace {

struct RelEval {
  const RelationalModel& m;
  std::unordered_map<const Formula*, WorldSet, FormulaHash, FormulaEq> memo;

  const WorldSet& ts(const FormulaPtr& f) {
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    WorldSet r = compute(f);
    return memo.emplace(f.get(), std::move(r)).first->second;
  }

  WorldSet compute(const FormulaPtr& f) {
    const std::size_t n = m.world_count();
    const WorldSet full = ws_full(n);
    switch (f->op()) {
      case Op::Atom:
        return m.valuation(f->atom_name());
      case Op::Top:
        return full;
      case Op::Bottom:
        return ws_empty(n);
      case Op::Not:
        return full - ts(f->child());
      case Op::And:
        return ts(f->child(0)) & ts(f->child(1));
      case Op::Or:
        return ts(f->child(0)) | ts(f->child(1));
      case Op::Implies:
        return (full - ts(f->child(0))) | ts(f->child(1));
      case Op::Iff:
        return full - (ts(f->child(0)) ^ ts(f->child(1)));
      case Op::Knows:
        return ts(f->child()) == full ? full : ws_empty(n);
      case Op::Entails: {
        const WorldSet& sub = ts(f->child());
        WorldSet r = ws_empty(n);
        for (std::size_t x = 0; x < n; ++x)
          if (m.r_e(x).is_subset_of(sub)) r.set(x);
        return r;
      }
      case Op::Believes: {
        if (m.cls() != RelationalClass::Doxastic)
          throw EvalError("B needs the doxastic relational class");
        return m.belief_image().is_subset_of(ts(f->child())) ? full
                                                             : ws_empty(n);
      }
      case Op::Box: {
        if (m.cls() != RelationalClass::Knowability)
          throw EvalError("[] needs the knowability relational class");
        const WorldSet& sub = ts(f->child());
        WorldSet r = ws_empty(n);
        for (std::size_t x = 0; x < n; ++x)
          if (m.r_box(x).is_subset_of(sub)) r.set(x);
        return r;
      }
      case Op::Diamond: {
        if (m.cls() != RelationalClass::Knowability)
          throw EvalError("<> needs the knowability relational class");
        const WorldSet& sub = ts(f->child());
        WorldSet r = ws_empty(n);
        for (std::size_t x = 0; x < n; ++x)
          if ((m.r_box(x) & sub).any()) r.set(x);
        return r;
      }
      case Op::EffortBox:
      case Op::EffortDiamond:
        throw EvalError("effort operators have no relational semantics");
    }
    throw EvalError("unreachable formula op");
  }
};

}  // namespace

WorldSet relational_truth_set(const RelationalModel& m, const FormulaPtr& f) {
  RelEval ev{m, {}};
  return ev.ts(f);
}

bool relational_holds(const RelationalModel& m, std::size_t x,
                      const FormulaPtr& f) {
  if (x >= m.world_count()) throw EvalError("unknown world index");
  return relational_truth_set(m, f).test(x);
}

EquivalenceReport verify_equivalence(const RelationalModel& m,
                                     const std::vector<FormulaPtr>& formulas) {
  EquivalenceReport rep;
  const std::size_t n = m.world_count();

  // Build the class-appropriate evidence-side model once.
  std::optional<EvidenceModel> ev;
  std::optional<WorldSet> belief;
  std::optional<KnowabilityTranslation> kt;
  switch (m.cls()) {
    case RelationalClass::Evidence:
      ev = relational_to_evidence(m);
      break;
    case RelationalClass::Doxastic: {
      auto [model, v] = doxastic_to_evidence(m);
      ev = std::move(model);
      belief = std::move(v);
      break;
    }
    case RelationalClass::Knowability:
      kt = knowability_to_interaction(m);
      break;
  }

  for (const FormulaPtr& f : formulas) {
    ++rep.formulas;
    WorldSet rel = relational_truth_set(m, f);
    WorldSet evi;
    if (kt)
      evi = kt->model.truth_set(kt->designated, f);
    else
      evi = truth_set(*ev, 0, f, belief);
    for (std::size_t x = 0; x < n; ++x) {
      ++rep.points;
      if (rel.test(x) != evi.test(x))
        rep.mismatches.push_back(
            {to_text(f), m.world_id(x), rel.test(x), evi.test(x)});
    }
  }
  return rep;
}

}  // namespace evlab
