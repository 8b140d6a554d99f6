#include "evlab/checker.hpp"

#include <unordered_map>

#include "evlab/errors.hpp"

namespace evlab {
namespace {

struct Eval {
  const EvidenceModel& m;
  std::size_t e;
  const WorldSet* belief;  // null when no doxastic component
  std::unordered_map<const Formula*, WorldSet, FormulaHash, FormulaEq> memo;

  const WorldSet& coh() const { return m.coherence_set(e); }

  const WorldSet& ts(const FormulaPtr& f) {
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    WorldSet r = compute(f);
    return memo.emplace(f.get(), std::move(r)).first->second;
  }

  WorldSet compute(const FormulaPtr& f) {
    const WorldSet& u = coh();
    switch (f->op()) {
      case Op::Atom:
        return m.valuation(f->atom_name()) & u;
      case Op::Top:
        return u;
      case Op::Bottom:
        return ws_empty(u.size());
      case Op::Not:
        return u - ts(f->child());
      case Op::And:
        return ts(f->child(0)) & ts(f->child(1));
      case Op::Or:
        return ts(f->child(0)) | ts(f->child(1));
      case Op::Implies:
        return (u - ts(f->child(0))) | ts(f->child(1));
      case Op::Iff:
        return u - (ts(f->child(0)) ^ ts(f->child(1)));
      case Op::Knows:
        // General clause: ⋃_y I_e(y) ⊆ ‖φ‖ — world-independent, so the
        // truth set is all of U_e or empty.
        return m.interp_union(e).is_subset_of(ts(f->child()))
                   ? u
                   : ws_empty(u.size());
      case Op::Entails: {
        const WorldSet& sub = ts(f->child());
        WorldSet r = ws_empty(u.size());
        for (auto x = u.find_first(); x != WorldSet::npos; x = u.find_next(x))
          if (m.interp(e, x).is_subset_of(sub)) r.set(x);
        return r;
      }
      case Op::Believes: {
        if (!belief)
          throw EvalError("formula contains B but no belief set was supplied");
        return belief->is_subset_of(ts(f->child())) ? u : ws_empty(u.size());
      }
      case Op::Box:
      case Op::Diamond:
      case Op::EffortBox:
      case Op::EffortDiamond:
        throw EvalError(
            std::string("operator ") + op_token(f->op()) +
            " requires an interaction model");
    }
    throw EvalError("unreachable formula op");
  }
};

void require_e1(const EvidenceModel& m, std::size_t e) {
  E1StateReport r = m.check_e1(e);
  if (!r.pass)
    throw EvalError("strict mode: evidence '" + m.evidence_id(e) +
                    "' violates (E1): '" + m.world_id(r.witness->y) +
                    "' is in I_e('" + m.world_id(r.witness->x) +
                    "') but not in its own interpretation");
}

void check_belief(const EvidenceModel& m, std::size_t e, const WorldSet& v) {
  if (v.size() != m.world_count())
    throw EvalError("belief set sized for a different model");
  if (v.none()) throw EvalError("belief set must be nonempty");
  std::size_t stray = ws_first_outside(v, m.coherence_set(e));
  if (stray != WorldSet::npos)
    throw EvalError("belief set reaches outside U_" + m.evidence_id(e) +
                    ": world '" + m.world_id(stray) + "'");
}

}  // namespace

WorldSet truth_set(const EvidenceModel& m, std::size_t e, const FormulaPtr& f,
                   const std::optional<WorldSet>& belief,
                   const CheckOptions& opts) {
  if (e >= m.evidence_count()) throw EvalError("unknown evidence index");
  if (opts.strict_e1) require_e1(m, e);
  if (belief) check_belief(m, e, *belief);
  Eval ev{m, e, belief ? &*belief : nullptr, {}};
  return ev.ts(f);
}

bool holds(const EvidenceModel& m, const Scenario& s, const FormulaPtr& f,
           const CheckOptions& opts) {
  return truth_set(m, s.evidence, f, std::nullopt, opts).test(s.world);
}

bool holds(const EvidenceModel& m, const DoxasticScenario& s,
           const FormulaPtr& f, const CheckOptions& opts) {
  return truth_set(m, s.evidence, f, s.belief, opts).test(s.world);
}

namespace {

struct Tracer {
  Eval ev;

  std::vector<std::string> label_set(const WorldSet& w) const {
    return ev.m.names(w);
  }

  TraceNode node(const FormulaPtr& f, std::size_t x) {
    const EvidenceModel& m = ev.m;
    TraceNode t;
    t.formula = to_text(f);
    t.world = m.world_id(x);
    t.result = ev.ts(f).test(x);
    switch (f->op()) {
      case Op::Atom:
        t.clause = "atom";
        t.sets.emplace_back("valuation", label_set(m.valuation(f->atom_name())));
        break;
      case Op::Top:
        t.clause = "top";
        break;
      case Op::Bottom:
        t.clause = "bottom";
        break;
      case Op::Not:
        t.clause = "not";
        t.children.push_back(node(f->child(), x));
        break;
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff:
        t.clause = f->op() == Op::And     ? "and"
                   : f->op() == Op::Or    ? "or"
                   : f->op() == Op::Implies ? "implies"
                                            : "iff";
        t.children.push_back(node(f->child(0), x));
        t.children.push_back(node(f->child(1), x));
        break;
      case Op::Entails: {
        t.clause = "E";
        const WorldSet& ix = m.interp(ev.e, x);
        const WorldSet& sub = ev.ts(f->child());
        t.sets.emplace_back("I_e(" + t.world + ")", label_set(ix));
        t.sets.emplace_back("||" + to_text(f->child()) + "||", label_set(sub));
        if (!t.result) {
          std::size_t y = ws_first_outside(ix, sub);
          t.witness = m.world_id(y);
          t.children.push_back(node(f->child(), y));
        }
        break;
      }
      case Op::Knows: {
        t.clause = "K";
        const WorldSet& dom = m.interp_union(ev.e);
        const WorldSet& sub = ev.ts(f->child());
        t.sets.emplace_back("K-domain", label_set(dom));
        t.sets.emplace_back("||" + to_text(f->child()) + "||", label_set(sub));
        if (!t.result) {
          std::size_t y = ws_first_outside(dom, sub);
          t.witness = m.world_id(y);
          // The witness may itself be incoherent (general clause); only
          // recurse where satisfaction is defined.
          if (m.coherent(y, ev.e)) t.children.push_back(node(f->child(), y));
        }
        break;
      }
      case Op::Believes: {
        t.clause = "B";
        if (!ev.belief)
          throw EvalError("formula contains B but no belief set was supplied");
        const WorldSet& v = *ev.belief;
        const WorldSet& sub = ev.ts(f->child());
        t.sets.emplace_back("V", label_set(v));
        t.sets.emplace_back("||" + to_text(f->child()) + "||", label_set(sub));
        if (!t.result) {
          std::size_t y = ws_first_outside(v, sub);
          t.witness = m.world_id(y);
          t.children.push_back(node(f->child(), y));
        }
        break;
      }
      case Op::Box:
      case Op::Diamond:
      case Op::EffortBox:
      case Op::EffortDiamond:
        throw EvalError(std::string("operator ") + op_token(f->op()) +
                        " requires an interaction model");
    }
    return t;
  }
};

void render_trace(const TraceNode& t, int depth, std::string& out) {
  std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  out += pad + "[" + t.clause + "] " + t.formula + " @ " + t.world + " = " +
         (t.result ? "true" : "false") + "\n";
  for (const auto& [label, ids] : t.sets) {
    out += pad + "    " + label + " = {";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ", ";
      out += ids[i];
    }
    out += "}\n";
  }
  if (t.witness) out += pad + "    witness: " + *t.witness + "\n";
  for (const auto& c : t.children) render_trace(c, depth + 1, out);
}

}  // namespace

TraceNode explain(const EvidenceModel& m, const Scenario& s,
                  const FormulaPtr& f, const CheckOptions& opts) {
  if (opts.strict_e1) require_e1(m, s.evidence);
  Tracer tr{Eval{m, s.evidence, nullptr, {}}};
  return tr.node(f, s.world);
}

TraceNode explain(const EvidenceModel& m, const DoxasticScenario& s,
                  const FormulaPtr& f, const CheckOptions& opts) {
  if (opts.strict_e1) require_e1(m, s.evidence);
  check_belief(m, s.evidence, s.belief);
  Tracer tr{Eval{m, s.evidence, &s.belief, {}}};
  return tr.node(f, s.world);
}

std::string format_trace(const TraceNode& t) {
  std::string out;
  render_trace(t, 0, out);
  return out;
}

}  // namespace evlab
