#include "evlab/random.hpp"

#include <string>

#include "evlab/belief.hpp"
#include "evlab/errors.hpp"

namespace evlab {
namespace {

const char* kAtomPool[] = {"p", "q", "r", "s", "t", "u", "v"};

std::vector<std::string> atom_pool(std::size_t n) {
  if (n > std::size(kAtomPool))
    throw EvalError("atom pool capped at " +
                    std::to_string(std::size(kAtomPool)));
  return {kAtomPool, kAtomPool + n};
}

FormulaProfile make_profile(int max_depth, std::vector<Op> ops) {
  FormulaProfile p;
  p.atoms = atom_pool(3);
  p.max_depth = max_depth;
  p.operators = std::move(ops);
  return p;
}

}  // namespace

FormulaProfile profile_ek(int max_depth) {
  return make_profile(max_depth, {Op::Not, Op::And, Op::Or, Op::Implies,
                                  Op::Knows, Op::Entails});
}

FormulaProfile profile_ekb(int max_depth) {
  return make_profile(max_depth, {Op::Not, Op::And, Op::Or, Op::Implies,
                                  Op::Knows, Op::Entails, Op::Believes});
}

FormulaProfile profile_ekbox(int max_depth) {
  return make_profile(max_depth, {Op::Not, Op::And, Op::Or, Op::Implies,
                                  Op::Knows, Op::Entails, Op::Box,
                                  Op::Diamond});
}

FormulaProfile profile_box(int max_depth) {
  return make_profile(max_depth,
                      {Op::Not, Op::And, Op::Or, Op::Implies, Op::Box,
                       Op::Diamond});
}

FormulaPtr random_formula(Rng& rng, const FormulaProfile& prof) {
  if (prof.atoms.empty()) throw EvalError("formula profile needs atoms");
  auto leaf = [&] {
    // Mostly atoms; the constants keep corner cases in play.
    std::uint64_t r = rng.below(prof.atoms.size() + 1);
    if (r < prof.atoms.size()) return atom(prof.atoms[r]);
    return rng.chance(1, 2) ? top() : bottom();
  };
  auto gen = [&](auto&& self, int depth) -> FormulaPtr {
    if (depth <= 0 || prof.operators.empty()) return leaf();
    // Two extra slots keep leaves reachable at every depth.
    std::uint64_t r = rng.below(prof.operators.size() + 2);
    if (r >= prof.operators.size()) return leaf();
    Op op = prof.operators[r];
    if (is_binary(op)) {
      FormulaPtr a = self(self, depth - 1);
      FormulaPtr b = self(self, depth - 1);
      switch (op) {
        case Op::And: return conj(std::move(a), std::move(b));
        case Op::Or: return disj(std::move(a), std::move(b));
        case Op::Implies: return implies(std::move(a), std::move(b));
        default: return iff(std::move(a), std::move(b));
      }
    }
    FormulaPtr a = self(self, depth - 1);
    switch (op) {
      case Op::Not: return neg(std::move(a));
      case Op::Knows: return knows(std::move(a));
      case Op::Entails: return entails(std::move(a));
      case Op::Believes: return believes(std::move(a));
      case Op::Box: return box(std::move(a));
      case Op::Diamond: return diamond(std::move(a));
      case Op::EffortBox: return effort_box(std::move(a));
      default: return effort_diamond(std::move(a));
    }
  };
  return gen(gen, prof.max_depth);
}

namespace {

WorldSet random_subset(Rng& rng, std::size_t n, std::uint32_t num,
                       std::uint32_t den) {
  WorldSet w(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.chance(num, den)) w.set(i);
  return w;
}

WorldSet random_nonempty_subset_of(Rng& rng, const WorldSet& pool) {
  std::vector<std::size_t> members = ws_members(pool);
  WorldSet w(pool.size());
  for (std::size_t i : members)
    if (rng.chance(1, 2)) w.set(i);
  if (w.none()) w.set(members[rng.below(members.size())]);
  return w;
}

}  // namespace

EvidenceModel random_evidence_model(Rng& rng, const ModelProfile& prof,
                                    bool e1_repair) {
  const std::size_t n = rng.in_range(prof.min_worlds, prof.max_worlds);
  const std::size_t k = rng.in_range(prof.min_evidence, prof.max_evidence);

  EvidenceModel::Builder b;
  for (std::size_t i = 0; i < n; ++i) b.add_world("w" + std::to_string(i));
  for (std::size_t e = 0; e < k; ++e) b.add_evidence("e" + std::to_string(e));

  bool any_coherent = false;
  std::vector<std::vector<WorldSet>> interp(k);
  for (std::size_t e = 0; e < k; ++e) {
    for (std::size_t x = 0; x < n; ++x)
      interp[e].push_back(
          random_subset(rng, n, prof.density_num, prof.density_den));
    if (e1_repair) {
      // (E1) repair: membership anywhere forces self-membership. One
      // pass suffices — the added diagonal bits already satisfy it.
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y : ws_members(interp[e][x])) interp[e][y].set(y);
    }
    for (std::size_t x = 0; x < n; ++x)
      any_coherent = any_coherent || interp[e][x].test(x);
  }
  if (prof.ensure_scenario && !any_coherent) {
    std::size_t e = rng.below(k);
    std::size_t x = rng.below(n);
    interp[e][x].set(x);
  }
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t x = 0; x < n; ++x) b.interp(e, x, interp[e][x]);

  for (const auto& atom : atom_pool(prof.atoms))
    b.valuation(atom, random_subset(rng, n, 1, 2));
  return b.build();
}

DoxasticSample random_doxastic_sample(Rng& rng, const ModelProfile& prof,
                                      bool e2_close) {
  DoxasticSample s{random_evidence_model(rng, prof, true), {}};
  for (std::size_t e = 0; e < s.model.evidence_count(); ++e) {
    const WorldSet& u = s.model.coherence_set(e);
    if (u.none()) {
      s.belief.emplace_back(std::nullopt);
      continue;
    }
    WorldSet v = random_nonempty_subset_of(rng, u);
    // Under (E1) the closure stays inside U_e.
    if (e2_close) v = least_e2_superset(s.model, e, v);
    s.belief.emplace_back(std::move(v));
  }
  return s;
}

InteractionModel random_interaction_model(Rng& rng, const ModelProfile& prof) {
  return InteractionModel::over(random_evidence_model(rng, prof, true));
}

RelationalModel random_relational_model(Rng& rng, RelationalClass cls,
                                        const ModelProfile& prof,
                                        bool e2_image) {
  const std::size_t n = rng.in_range(prof.min_worlds, prof.max_worlds);
  RelationalModel::Builder b(cls);
  for (std::size_t i = 0; i < n; ++i) b.add_world("w" + std::to_string(i));

  std::vector<WorldSet> re;
  for (std::size_t x = 0; x < n; ++x) {
    WorldSet row = random_subset(rng, n, prof.density_num, prof.density_den);
    row.set(x);  // reflexive
    re.push_back(row);
  }

  if (cls == RelationalClass::Doxastic) {
    WorldSet v = random_nonempty_subset_of(rng, ws_full(n));
    if (e2_image) {
      // Close under R_E so that ∀y ∈ V: R_E(y) ⊆ V.
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t y : ws_members(v)) {
          if (!re[y].is_subset_of(v)) {
            v |= re[y];
            grew = true;
          }
        }
      }
    }
    b.belief(std::move(v));
  }

  if (cls == RelationalClass::Knowability) {
    // Sparser random edges, then reflexive-transitive closure.
    std::vector<WorldSet> rb;
    for (std::size_t x = 0; x < n; ++x) {
      WorldSet row = random_subset(rng, n, prof.density_num,
                                   prof.density_den * 2);
      row.set(x);
      rb.push_back(row);
    }
    for (std::size_t k = 0; k < n; ++k)  // Warshall
      for (std::size_t x = 0; x < n; ++x)
        if (rb[x].test(k)) rb[x] |= rb[k];
    for (std::size_t x = 0; x < n; ++x) b.r_box(x, std::move(rb[x]));
  }

  for (std::size_t x = 0; x < n; ++x) b.r_e(x, std::move(re[x]));
  for (const auto& atom : atom_pool(prof.atoms))
    b.valuation(atom, random_subset(rng, n, 1, 2));
  return b.build();
}

}  // namespace evlab
