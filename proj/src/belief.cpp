#include "evlab/belief.hpp"

#include "evlab/errors.hpp"

namespace evlab {
namespace {

WorldSet step(const EvidenceModel& m, std::size_t e, const WorldSet& v) {
  WorldSet next = ws_empty(v.size());
  for (auto y = v.find_first(); y != WorldSet::npos; y = v.find_next(y))
    next |= m.interp(e, y);
  return next;
}

}  // namespace

BeliefLadder ladder(const EvidenceModel& m, std::size_t e, const WorldSet& v1,
                    const LadderOptions& opts) {
  if (e >= m.evidence_count()) throw EvalError("unknown evidence index");
  if (v1.size() != m.world_count())
    throw EvalError("initial conjecture sized for a different model");
  if (v1.none()) throw EvalError("initial conjecture must be nonempty");
  std::size_t stray = ws_first_outside(v1, m.coherence_set(e));
  if (stray != WorldSet::npos)
    throw EvalError("initial conjecture reaches outside U_" + m.evidence_id(e) +
                    ": world '" + m.world_id(stray) + "'");
  if (opts.strict_e1) {
    E1StateReport r = m.check_e1(e);
    if (!r.pass)
      throw EvalError("ladder requires (E1) at evidence '" + m.evidence_id(e) +
                      "'; witness: '" + m.world_id(r.witness->y) +
                      "' in I_e('" + m.world_id(r.witness->x) +
                      "') but not in its own interpretation");
  }

  BeliefLadder out;
  out.evidence = e;
  out.nested = true;
  out.levels.push_back(v1);
  WorldSet seen_union = v1;
  while (true) {
    const WorldSet& last = out.levels.back();
    WorldSet next = step(m, e, last);
    if (next == last) {
      out.k_star = out.levels.size();
      out.closure = last;
      return out;
    }
    out.nested = out.nested && last.is_subset_of(next);
    // A level equal to an earlier one (other than its predecessor) means
    // the iteration cycles; only possible without (E1).
    for (const WorldSet& prev : out.levels)
      if (prev == next) {
        out.k_star = std::nullopt;
        out.closure = seen_union;
        return out;
      }
    seen_union |= next;
    out.levels.push_back(std::move(next));
  }
}

WorldSet least_e2_superset(const EvidenceModel& m, std::size_t e,
                           const WorldSet& v) {
  if (e >= m.evidence_count()) throw EvalError("unknown evidence index");
  if (v.size() != m.world_count())
    throw EvalError("world set sized for a different model");
  WorldSet w = v;
  while (true) {
    WorldSet grow = step(m, e, w);
    if (grow.is_subset_of(w)) return w;
    w |= grow;
  }
}

}  // namespace evlab
