#include "evlab/interaction_model.hpp"

#include <unordered_map>
#include <utility>

#include "evlab/errors.hpp"

namespace evlab {

InteractionModel InteractionModel::over(EvidenceModel base,
                                        std::size_t max_states) {
  E1Report e1 = base.check_e1();
  if (!e1.pass) {
    for (const auto& st : e1.states)
      if (!st.pass)
        throw ModelError(
            "interaction base must satisfy (E1); generator '" +
                base.evidence_id(st.evidence) + "' fails with witness ('" +
                base.world_id(st.witness->x) + "', '" +
                base.world_id(st.witness->y) + "')",
            "interpretation." + base.evidence_id(st.evidence));
  }

  InteractionModel m;
  const std::size_t n = base.world_count();
  auto intern = [&](Table t) -> std::size_t {
    auto it = m.index_.find(t);
    if (it != m.index_.end()) return it->second;
    std::size_t pos = m.tables_.size();
    if (pos >= max_states)
      throw ModelError("interaction lattice exceeds " +
                       std::to_string(max_states) +
                       " distinct interpretation functions");
    m.index_.emplace(t, pos);
    m.tables_.push_back(std::move(t));
    return pos;
  };

  for (std::size_t g = 0; g < base.evidence_count(); ++g) {
    Table t;
    t.reserve(n);
    for (std::size_t x = 0; x < n; ++x) t.push_back(base.interp(g, x));
    m.gen_table_.push_back(intern(std::move(t)));
  }

  // Close under pointwise intersection. The growing upper bound keeps
  // new×old and new×new pairs in scope.
  for (std::size_t i = 1; i < m.tables_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Table t;
      t.reserve(n);
      for (std::size_t x = 0; x < n; ++x)
        t.push_back(m.tables_[i][x] & m.tables_[j][x]);
      intern(std::move(t));
    }
  }

  for (const Table& t : m.tables_) {
    WorldSet u = ws_empty(n);
    WorldSet all = ws_empty(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (t[x].test(x)) u.set(x);
      all |= t[x];
    }
    m.u_.push_back(std::move(u));
    m.union_.push_back(std::move(all));
  }

  m.base_ = std::move(base);
  return m;
}

void InteractionModel::check_state(const State& s) const {
  if (s.size() != generator_count())
    throw EvalError("state sized for a different interaction model");
  if (s.none()) throw EvalError("evidence states are nonempty generator sets");
}

InteractionModel::State InteractionModel::state(
    const std::vector<std::string>& generator_ids) const {
  State s(generator_count());
  for (const auto& id : generator_ids) s.set(base_.evidence(id));
  check_state(s);
  return s;
}

InteractionModel::State InteractionModel::singleton(std::size_t gen) const {
  if (gen >= generator_count()) throw EvalError("unknown generator index");
  State s(generator_count());
  s.set(gen);
  return s;
}

InteractionModel::State InteractionModel::state_from_mask(
    std::uint64_t mask) const {
  State s(generator_count());
  for (std::size_t g = 0; g < generator_count(); ++g)
    if (mask & (std::uint64_t{1} << g)) s.set(g);
  check_state(s);
  return s;
}

std::vector<InteractionModel::State> InteractionModel::all_states() const {
  if (generator_count() > 20)
    throw EvalError("state enumeration capped at 20 generators");
  std::vector<State> out;
  const std::uint64_t total = std::uint64_t{1} << generator_count();
  for (std::uint64_t mask = 1; mask < total; ++mask)
    out.push_back(state_from_mask(mask));
  return out;
}

InteractionModel::State InteractionModel::meet(const State& a,
                                               const State& b) const {
  check_state(a);
  check_state(b);
  return a | b;
}

bool InteractionModel::leq(const State& a, const State& b) const {
  return meet(a, b) == a;
}

std::size_t InteractionModel::table_of(const State& s) const {
  check_state(s);
  std::size_t g = s.find_first();
  std::size_t idx = gen_table_[g];
  Table acc;
  bool copied = false;
  for (g = s.find_next(g); g != State::npos; g = s.find_next(g)) {
    const Table& next = tables_[gen_table_[g]];
    if (!copied) {
      acc = tables_[idx];
      copied = true;
    }
    for (std::size_t x = 0; x < acc.size(); ++x) acc[x] &= next[x];
  }
  if (!copied) return idx;
  // The closure contains every intersection of generator tables.
  auto it = index_.find(acc);
  if (it == index_.end()) throw Error("internal: meet closure incomplete");
  return it->second;
}

std::size_t InteractionModel::meet_index(std::size_t i, std::size_t j) const {
  if (i == j) return i;
  Table t;
  t.reserve(tables_[i].size());
  for (std::size_t x = 0; x < tables_[i].size(); ++x)
    t.push_back(tables_[i][x] & tables_[j][x]);
  auto it = index_.find(t);
  if (it == index_.end()) throw Error("internal: meet closure incomplete");
  return it->second;
}

WorldSet InteractionModel::interp_at(const State& s, std::size_t x) const {
  if (x >= world_count()) throw EvalError("unknown world index");
  return tables_[table_of(s)][x];
}

WorldSet InteractionModel::coherence(const State& s) const {
  return u_[table_of(s)];
}

std::string InteractionModel::state_label(const State& s) const {
  std::string out = "{";
  bool first = true;
  for (auto g = s.find_first(); g != State::npos; g = s.find_next(g)) {
    if (!first) out += ",";
    out += base_.evidence_id(g);
    first = false;
  }
  return out + "}";
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::pair<const Formula*, std::size_t>& k) const {
    return k.first->hash() * 0x9e3779b97f4a7c15ULL + k.second;
  }
};
struct KeyEq {
  bool operator()(const std::pair<const Formula*, std::size_t>& a,
                  const std::pair<const Formula*, std::size_t>& b) const {
    return a.second == b.second && *a.first == *b.first;
  }
};

}  // namespace

/// Per-call evaluation context; memo keyed on (formula, interpretation).
struct InteractionEval {
  const InteractionModel& m;
  std::unordered_map<std::pair<const Formula*, std::size_t>, WorldSet, KeyHash,
                     KeyEq>
      memo;

  const WorldSet& ts(const FormulaPtr& f, std::size_t i) {
    auto key = std::make_pair(f.get(), i);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    WorldSet r = compute(f, i);
    return memo.emplace(key, std::move(r)).first->second;
  }

  WorldSet compute(const FormulaPtr& f, std::size_t i) {
    const WorldSet& u = m.u_[i];
    switch (f->op()) {
      case Op::Atom:
        return m.base_.valuation(f->atom_name()) & u;
      case Op::Top:
        return u;
      case Op::Bottom:
        return ws_empty(u.size());
      case Op::Not:
        return u - ts(f->child(), i);
      case Op::And:
        return ts(f->child(0), i) & ts(f->child(1), i);
      case Op::Or:
        return ts(f->child(0), i) | ts(f->child(1), i);
      case Op::Implies:
        return (u - ts(f->child(0), i)) | ts(f->child(1), i);
      case Op::Iff:
        return u - (ts(f->child(0), i) ^ ts(f->child(1), i));
      case Op::Knows:
        return m.union_[i].is_subset_of(ts(f->child(), i)) ? u
                                                           : ws_empty(u.size());
      case Op::Entails: {
        const WorldSet& sub = ts(f->child(), i);
        WorldSet r = ws_empty(u.size());
        for (auto x = u.find_first(); x != WorldSet::npos; x = u.find_next(x))
          if (m.tables_[i][x].is_subset_of(sub)) r.set(x);
        return r;
      }
      case Op::Box:
        return box_set(ts(f->child(), i), i);
      case Op::Diamond:
        // ◇φ = ¬□¬φ.
        return u - box_set(u - ts(f->child(), i), i);
      case Op::EffortBox: {
        // ∃e′: x ∈ U_{S⊕e′} and φ true at (x, S⊕e′).
        WorldSet r = ws_empty(u.size());
        for (std::size_t j = 0; j < m.tables_.size(); ++j)
          r |= ts(f->child(), m.meet_index(i, j));
        return r;
      }
      case Op::EffortDiamond: {
        // ¬[*]¬φ: no refinement makes φ false while keeping x coherent.
        WorldSet r = u;
        for (std::size_t j = 0; j < m.tables_.size(); ++j) {
          std::size_t k = m.meet_index(i, j);
          r -= m.u_[k] - ts(f->child(), k);
        }
        return r;
      }
      case Op::Believes:
        throw EvalError("B requires a doxastic evidence scenario");
    }
    throw EvalError("unreachable formula op");
  }

  /// ‖□·‖ for a target set: ⋃ {U_{i⊕j} : U_{i⊕j} ⊆ target}.
  WorldSet box_set(const WorldSet& target, std::size_t i) {
    WorldSet r = ws_empty(target.size());
    for (std::size_t j = 0; j < m.tables_.size(); ++j) {
      const WorldSet& uk = m.u_[m.meet_index(i, j)];
      if (uk.is_subset_of(target)) r |= uk;
    }
    return r;
  }
};

WorldSet InteractionModel::truth_set(const State& s, const FormulaPtr& f) const {
  InteractionEval ev{*this, {}};
  return ev.ts(f, table_of(s));
}

bool InteractionModel::holds(const State& s, std::size_t x,
                             const FormulaPtr& f) const {
  std::size_t i = table_of(s);
  if (x >= world_count()) throw EvalError("unknown world index");
  if (!u_[i].test(x))
    throw EvalError("not an evidence scenario: world '" + base_.world_id(x) +
                    "' does not cohere with state " + state_label(s));
  InteractionEval ev{*this, {}};
  return ev.ts(f, i).test(x);
}

}  // namespace evlab
