#include "evlab/sat.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>
#include <vector>

#include "evlab/checker.hpp"
#include "evlab/errors.hpp"
#include "evlab/model_io.hpp"
#include "evlab/translate.hpp"

namespace evlab {

const char* logic_name(LogicId id) {
  switch (id) {
    case LogicId::EK: return "EK";
    case LogicId::EKB: return "EKB";
    case LogicId::EKB_E2: return "EKB_E2";
    case LogicId::EKK: return "EKK";
    case LogicId::S4Box: return "S4_Box";
  }
  return "?";
}

std::optional<LogicId> logic_from_name(const std::string& name) {
  if (name == "ek") return LogicId::EK;
  if (name == "ekb") return LogicId::EKB;
  if (name == "ekb2") return LogicId::EKB_E2;
  if (name == "ekk") return LogicId::EKK;
  if (name == "s4box") return LogicId::S4Box;
  return std::nullopt;
}

void check_language(LogicId logic, const FormulaPtr& f) {
  const std::uint32_t mask = op_mask(f);
  auto reject = [&](Op op) {
    if (uses_op(mask, op))
      throw EvalError(std::string("operator ") + op_token(op) +
                      " is outside the " + logic_name(logic) + " language");
  };
  reject(Op::EffortBox);
  reject(Op::EffortDiamond);
  if (logic != LogicId::EKB && logic != LogicId::EKB_E2) reject(Op::Believes);
  if (logic != LogicId::EKK && logic != LogicId::S4Box) {
    reject(Op::Box);
    reject(Op::Diamond);
  }
  if (logic == LogicId::S4Box) {
    reject(Op::Knows);
    reject(Op::Entails);
  }
}

namespace {

// Candidate models live in machine words: n ≤ 8 worlds, world sets as
// n-bit masks.
constexpr std::size_t kMaxWorlds = 8;
constexpr std::size_t kMaxPreorderWorlds = 5;  // R_□ enumeration cap
constexpr std::uint64_t kMaxValuations = 1u << 20;

using Mask = std::uint32_t;

bool needs_preorder(LogicId logic) {
  return logic == LogicId::EKK || logic == LogicId::S4Box;
}
bool needs_belief(LogicId logic) {
  return logic == LogicId::EKB || logic == LogicId::EKB_E2;
}

/// All preorders on {0..n-1} as per-world image masks, ordered by the
/// off-diagonal bit pattern ascending. Cached per n.
const std::vector<std::vector<Mask>>& preorder_list(std::size_t n) {
  static std::mutex mu;
  static std::vector<std::vector<Mask>> cache[kMaxPreorderWorlds + 1];
  static bool ready[kMaxPreorderWorlds + 1] = {};
  std::lock_guard<std::mutex> lock(mu);
  if (!ready[n]) {
    std::vector<std::vector<Mask>> out;
    const std::size_t bits = n * (n - 1);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
      std::vector<Mask> rows(n);
      std::size_t b = 0;
      for (std::size_t x = 0; x < n; ++x) {
        rows[x] = Mask{1} << x;
        for (std::size_t y = 0; y < n; ++y) {
          if (y == x) continue;
          if (m & (std::uint64_t{1} << b)) rows[x] |= Mask{1} << y;
          ++b;
        }
      }
      bool trans = true;
      for (std::size_t x = 0; x < n && trans; ++x)
        for (std::size_t y = 0; y < n && trans; ++y)
          if (rows[x] & (Mask{1} << y)) trans = (rows[y] & ~rows[x]) == 0;
      if (trans) out.push_back(std::move(rows));
    }
    cache[n] = std::move(out);
    ready[n] = true;
  }
  return cache[n];
}

/// Flattened formula in evaluation order (children precede parents).
struct Program {
  struct Node {
    Op op;
    int a = -1;
    int b = -1;
    int atom = -1;
  };
  std::vector<Node> nodes;
  std::vector<std::string> atoms;  // sorted
};

Program compile(const FormulaPtr& f) {
  Program p;
  auto names = atom_names(f);
  p.atoms.assign(names.begin(), names.end());
  auto atom_index = [&](const std::string& s) {
    return static_cast<int>(std::lower_bound(p.atoms.begin(), p.atoms.end(),
                                             s) -
                            p.atoms.begin());
  };
  std::unordered_map<const Formula*, int, FormulaHash, FormulaEq> pos;
  for (const FormulaPtr& sub : subformulas(f)) {
    Program::Node n;
    n.op = sub->op();
    if (sub->op() == Op::Atom) n.atom = atom_index(sub->atom_name());
    if (sub->arity() > 0) n.a = pos.at(sub->child(0).get());
    if (sub->arity() > 1) n.b = pos.at(sub->child(1).get());
    pos.emplace(sub.get(), static_cast<int>(p.nodes.size()));
    p.nodes.push_back(n);
  }
  return p;
}

struct Candidate {
  std::size_t n;
  std::vector<Mask> val;   // per atom
  std::vector<Mask> re;    // per world
  Mask v = 0;              // belief image (belief logics)
  std::vector<Mask> rbox;  // per world (preorder logics)
};

/// Exact truth masks for a fully decoded candidate.
Mask eval(const Program& p, const Candidate& c, std::vector<Mask>& t) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << c.n) - 1);
  t.resize(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& nd = p.nodes[i];
    Mask r = 0;
    switch (nd.op) {
      case Op::Atom: r = c.val[nd.atom]; break;
      case Op::Top: r = full; break;
      case Op::Bottom: r = 0; break;
      case Op::Not: r = full & ~t[nd.a]; break;
      case Op::And: r = t[nd.a] & t[nd.b]; break;
      case Op::Or: r = t[nd.a] | t[nd.b]; break;
      case Op::Implies: r = (full & ~t[nd.a]) | t[nd.b]; break;
      case Op::Iff: r = full & ~(t[nd.a] ^ t[nd.b]); break;
      case Op::Knows: r = (t[nd.a] == full) ? full : 0; break;
      case Op::Entails:
        for (std::size_t x = 0; x < c.n; ++x)
          if ((c.re[x] & ~t[nd.a]) == 0) r |= Mask{1} << x;
        break;
      case Op::Believes:
        r = ((c.v & ~t[nd.a]) == 0) ? full : 0;
        break;
      case Op::Box:
        for (std::size_t x = 0; x < c.n; ++x)
          if ((c.rbox[x] & ~t[nd.a]) == 0) r |= Mask{1} << x;
        break;
      case Op::Diamond:
        for (std::size_t x = 0; x < c.n; ++x)
          if (c.rbox[x] & t[nd.a]) r |= Mask{1} << x;
        break;
      default:
        throw EvalError("operator outside the search language");
    }
    t[i] = r;
  }
  return t.back();
}

/// Lower/upper truth bounds from the valuation alone, quantifying out the
/// relations (R_E reflexive, R_□ a preorder, V nonempty). If the upper
/// bound misses the witness world, no relation assignment can help and
/// the whole valuation block is pruned.
bool valuation_may_satisfy(const Program& p, std::size_t n,
                           const std::vector<Mask>& val) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << n) - 1);
  std::vector<std::pair<Mask, Mask>> b(p.nodes.size());  // (lb, ub)
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& nd = p.nodes[i];
    Mask lb = 0, ub = 0;
    auto A = [&] { return b[nd.a]; };
    auto B = [&] { return b[nd.b]; };
    switch (nd.op) {
      case Op::Atom: lb = ub = val[nd.atom]; break;
      case Op::Top: lb = ub = full; break;
      case Op::Bottom: lb = ub = 0; break;
      case Op::Not:
        lb = full & ~A().second;
        ub = full & ~A().first;
        break;
      case Op::And:
        lb = A().first & B().first;
        ub = A().second & B().second;
        break;
      case Op::Or:
        lb = A().first | B().first;
        ub = A().second | B().second;
        break;
      case Op::Implies:
        lb = (full & ~A().second) | B().first;
        ub = (full & ~A().first) | B().second;
        break;
      case Op::Iff:
        lb = ((full & ~A().second) | B().first) &
             ((full & ~B().second) | A().first);
        ub = ((full & ~A().first) | B().second) &
             ((full & ~B().first) | A().second);
        break;
      case Op::Knows:
        lb = (A().first == full) ? full : 0;
        ub = (A().second == full) ? full : 0;
        break;
      case Op::Entails:
      case Op::Box:
        // Guaranteed only if the operand is guaranteed everywhere (the
        // image may be all of X); possible wherever the operand is
        // possible (the image may shrink to the reflexive loop).
        lb = (A().first == full) ? full : 0;
        ub = A().second;
        break;
      case Op::Diamond:
        lb = A().first;
        ub = A().second ? full : 0;
        break;
      case Op::Believes:
        lb = (A().first == full) ? full : 0;
        ub = A().second ? full : 0;
        break;
      default:
        throw EvalError("operator outside the search language");
    }
    b[i] = {lb, ub};
  }
  return (b.back().second & 1) != 0;
}

struct Space {
  LogicId logic;
  std::size_t n;
  std::size_t atom_count;
  bool vary_re;
  bool vary_v;
  bool vary_box;
  std::uint64_t re_space;
  std::uint64_t v_space;
  std::uint64_t box_space;
  std::uint64_t rel_total;
  const std::vector<std::vector<Mask>>* preorders = nullptr;
};

Space make_space(LogicId logic, std::size_t n, const FormulaPtr& f) {
  const std::uint32_t mask = op_mask(f);
  Space s;
  s.logic = logic;
  s.n = n;
  // Unused relations are pinned: identity R_E / identity R_□ / full V.
  // The formula cannot see them, and the pins satisfy every class
  // condition, so no witness is lost.
  s.vary_re = uses_op(mask, Op::Entails);
  s.vary_v = needs_belief(logic) && uses_op(mask, Op::Believes);
  s.vary_box = needs_preorder(logic) &&
               (uses_op(mask, Op::Box) || uses_op(mask, Op::Diamond));
  s.re_space = s.vary_re ? (std::uint64_t{1} << (n * (n - 1))) : 1;
  s.v_space = s.vary_v ? ((std::uint64_t{1} << n) - 1) : 1;
  if (s.vary_box) {
    s.preorders = &preorder_list(n);
    s.box_space = s.preorders->size();
  } else {
    s.box_space = 1;
  }
  s.rel_total = s.re_space * s.v_space * s.box_space;
  return s;
}

/// Decode the relation part of a candidate index (the valuation part is
/// supplied by the block). Returns false for tuples outside the class
/// (EKB_E2 image closure) — they occupy enumeration positions but are
/// never models.
bool decode(const Space& s, std::uint64_t rel_idx, Candidate& c) {
  const Mask full = static_cast<Mask>((std::uint64_t{1} << s.n) - 1);
  std::uint64_t box_idx = rel_idx % s.box_space;
  std::uint64_t rest = rel_idx / s.box_space;
  std::uint64_t v_idx = rest % s.v_space;
  std::uint64_t re_idx = rest / s.v_space;

  c.re.assign(s.n, 0);
  if (s.vary_re) {
    std::size_t bit = 0;
    for (std::size_t x = 0; x < s.n; ++x) {
      Mask row = Mask{1} << x;
      for (std::size_t y = 0; y < s.n; ++y) {
        if (y == x) continue;
        if (re_idx & (std::uint64_t{1} << bit)) row |= Mask{1} << y;
        ++bit;
      }
      c.re[x] = row;
    }
  } else {
    for (std::size_t x = 0; x < s.n; ++x) c.re[x] = Mask{1} << x;
  }

  if (needs_belief(s.logic)) {
    c.v = s.vary_v ? static_cast<Mask>(v_idx + 1) : full;
    if (s.logic == LogicId::EKB_E2) {
      for (std::size_t y = 0; y < s.n; ++y)
        if ((c.v & (Mask{1} << y)) && (c.re[y] & ~c.v)) return false;
    }
  }

  if (needs_preorder(s.logic)) {
    if (s.vary_box) {
      c.rbox = (*s.preorders)[box_idx];
    } else {
      c.rbox.assign(s.n, 0);
      for (std::size_t x = 0; x < s.n; ++x) c.rbox[x] = Mask{1} << x;
    }
  }
  return true;
}

struct Block {
  std::uint64_t start;  // global index of the block's first candidate
  std::size_t n;
  std::vector<Mask> val;  // per atom
  const Space* space;
};

/// Valuation blocks in canonical order: world count ascending; world 0's
/// atom column free; the remaining columns non-increasing (any model can
/// be world-permuted into this shape with the witness fixed at world 0).
void append_blocks(const Space& s, const Program& p, std::uint64_t& offset,
                   std::vector<Block>& blocks) {
  const std::uint64_t cols = std::uint64_t{1} << s.atom_count;
  std::vector<std::uint64_t> col(s.n);
  auto emit = [&]() {
    Block b;
    b.start = offset;
    b.n = s.n;
    b.space = &s;
    b.val.assign(s.atom_count, 0);
    for (std::size_t a = 0; a < s.atom_count; ++a)
      for (std::size_t x = 0; x < s.n; ++x)
        if (col[x] & (std::uint64_t{1} << a)) b.val[a] |= Mask{1} << x;
    blocks.push_back(std::move(b));
    offset += s.rel_total;
    if (blocks.size() > kMaxValuations)
      throw EvalError("search space too large: reduce atoms or the bound");
  };
  auto suffix = [&](auto&& self, std::size_t pos, std::uint64_t max_col) {
    if (pos == s.n) {
      emit();
      return;
    }
    for (std::uint64_t v = 0; v <= max_col; ++v) {
      col[pos] = v;
      self(self, pos + 1, v);
    }
  };
  for (std::uint64_t c0 = 0; c0 < cols; ++c0) {
    col[0] = c0;
    suffix(suffix, 1, cols - 1);
  }
}

RelationalModel realize(LogicId logic, const Candidate& c,
                        const std::vector<std::string>& atoms) {
  RelationalClass cls = RelationalClass::Evidence;
  if (needs_belief(logic)) cls = RelationalClass::Doxastic;
  if (needs_preorder(logic)) cls = RelationalClass::Knowability;
  RelationalModel::Builder b(cls);
  for (std::size_t i = 0; i < c.n; ++i) b.add_world("w" + std::to_string(i));
  auto to_ws = [&](Mask m) {
    WorldSet w(c.n);
    for (std::size_t i = 0; i < c.n; ++i)
      if (m & (Mask{1} << i)) w.set(i);
    return w;
  };
  for (std::size_t x = 0; x < c.n; ++x) b.r_e(x, to_ws(c.re[x]));
  if (cls == RelationalClass::Doxastic) b.belief(to_ws(c.v));
  if (cls == RelationalClass::Knowability)
    for (std::size_t x = 0; x < c.n; ++x) b.r_box(x, to_ws(c.rbox[x]));
  for (std::size_t a = 0; a < atoms.size(); ++a)
    b.valuation(atoms[a], to_ws(c.val[a]));
  return b.build();
}

/// The returned witness must also satisfy the formula after translation
/// into evidence semantics — the transfer the paper's lemmas license.
void verify_witness(LogicId logic, const RelationalModel& m,
                    const FormulaPtr& f) {
  if (!relational_holds(m, 0, f))
    throw Error("internal: search witness fails relational re-check");
  bool transferred = false;
  switch (m.cls()) {
    case RelationalClass::Evidence: {
      EvidenceModel ev = relational_to_evidence(m);
      transferred = holds(ev, ev.scenario(std::size_t{0}, 0), f);
      break;
    }
    case RelationalClass::Doxastic: {
      auto [ev, v] = doxastic_to_evidence(m);
      transferred = holds(ev, ev.doxastic_scenario(0, 0, v), f);
      break;
    }
    case RelationalClass::Knowability: {
      KnowabilityTranslation kt = knowability_to_interaction(m);
      transferred = kt.model.holds(kt.designated, 0, f);
      break;
    }
  }
  if (!transferred)
    throw Error("internal: search witness fails evidence-semantics transfer");
}

}  // namespace

SearchOutcome find_model(LogicId logic, const FormulaPtr& f,
                         std::size_t max_worlds, const SearchOptions& opts) {
  check_language(logic, f);
  if (max_worlds < 1) throw EvalError("world bound must be at least 1");
  const std::size_t cap =
      needs_preorder(logic) && uses_op(op_mask(f), Op::Box) ? kMaxPreorderWorlds
      : needs_preorder(logic) && uses_op(op_mask(f), Op::Diamond)
          ? kMaxPreorderWorlds
          : kMaxWorlds;
  if (max_worlds > cap)
    throw EvalError("world bound capped at " + std::to_string(cap) + " for " +
                    logic_name(logic));

  Program prog = compile(f);
  std::vector<Space> spaces;
  spaces.reserve(max_worlds);
  std::vector<Block> blocks;
  std::uint64_t offset = 0;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    Space s = make_space(logic, n, f);
    s.atom_count = prog.atoms.size();
    spaces.push_back(s);
  }
  for (Space& s : spaces) append_blocks(s, prog, offset, blocks);
  const std::uint64_t total = offset;

  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  std::mutex best_mu;
  std::optional<Candidate> best_cand;

  auto worker = [&] {
    std::vector<Mask> scratch;
    Candidate c;
    while (true) {
      std::uint64_t bi = next_block.fetch_add(1);
      if (bi >= blocks.size()) return;
      const Block& blk = blocks[bi];
      if (blk.start >= best.load(std::memory_order_relaxed)) continue;
      if (!valuation_may_satisfy(prog, blk.n, blk.val)) continue;
      c.n = blk.n;
      c.val = blk.val;
      for (std::uint64_t r = 0; r < blk.space->rel_total; ++r) {
        std::uint64_t idx = blk.start + r;
        if (idx >= best.load(std::memory_order_relaxed)) break;
        if (!decode(*blk.space, r, c)) continue;
        if (eval(prog, c, scratch) & 1) {
          std::lock_guard<std::mutex> lock(best_mu);
          if (idx < best.load(std::memory_order_relaxed)) {
            best.store(idx, std::memory_order_relaxed);
            best_cand = c;
          }
          break;
        }
      }
    }
  };

  unsigned workers = std::max(1u, opts.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchOutcome out;
  out.bound = max_worlds;
  if (best_cand) {
    RelationalModel m = realize(logic, *best_cand, prog.atoms);
    verify_witness(logic, m, f);
    out.satisfiable = true;
    out.candidates = best.load() + 1;
    out.witness = SearchWitness{std::move(m), "w0"};
  } else {
    out.satisfiable = false;
    out.candidates = total;
  }
  return out;
}

SearchOutcome check_validity(LogicId logic, const FormulaPtr& f,
                             std::size_t max_worlds,
                             const SearchOptions& opts) {
  return find_model(logic, neg(f), max_worlds, opts);
}

nlohmann::json outcome_to_json(const SearchOutcome& o, bool validity_mode) {
  nlohmann::json j;
  if (validity_mode)
    j["verdict"] = o.satisfiable ? "countermodel" : "valid-up-to";
  else
    j["verdict"] = o.satisfiable ? "satisfiable" : "no-model-up-to";
  j["bound"] = o.bound;
  j["candidates"] = o.candidates;
  if (o.witness) {
    j["witness"] = {{"model", save_model(o.witness->model)},
                    {"world", o.witness->world}};
  }
  return j;
}

}  // namespace evlab
