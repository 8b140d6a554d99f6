#include "evlab/formula.hpp"

#include <unordered_set>
#include <utility>

#include "evlab/errors.hpp"

namespace evlab {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // splitmix64 finalizer, fed incrementally
  std::size_t x = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  return x;
}

bool valid_atom_name(const std::string& name) {
  if (name.empty()) return false;
  if (name[0] < 'a' || name[0] > 'z') return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return name != "true" && name != "false";
}

FormulaPtr make(Op op, std::string atom, std::vector<FormulaPtr> kids) {
  return std::make_shared<const Formula>(op, std::move(atom), std::move(kids));
}

}  // namespace

Formula::Formula(Op op, std::string atom, std::vector<FormulaPtr> kids)
    : op_(op), atom_(std::move(atom)), kids_(std::move(kids)) {
  std::size_t h = mix(0x2545f4914f6cdd1dULL, static_cast<std::size_t>(op_));
  for (char c : atom_) h = mix(h, static_cast<unsigned char>(c));
  for (const auto& k : kids_) h = mix(h, k->hash());
  hash_ = h;
}

bool Formula::operator==(const Formula& other) const {
  if (this == &other) return true;
  if (hash_ != other.hash_ || op_ != other.op_ || atom_ != other.atom_ ||
      kids_.size() != other.kids_.size())
    return false;
  for (std::size_t i = 0; i < kids_.size(); ++i)
    if (*kids_[i] != *other.kids_[i]) return false;
  return true;
}

bool is_unary(Op op) {
  switch (op) {
    case Op::Not:
    case Op::Knows:
    case Op::Entails:
    case Op::Believes:
    case Op::Box:
    case Op::Diamond:
    case Op::EffortBox:
    case Op::EffortDiamond:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      return true;
    default:
      return false;
  }
}

bool is_modal(Op op) {
  switch (op) {
    case Op::Knows:
    case Op::Entails:
    case Op::Believes:
    case Op::Box:
    case Op::Diamond:
    case Op::EffortBox:
    case Op::EffortDiamond:
      return true;
    default:
      return false;
  }
}

const char* op_token(Op op) {
  switch (op) {
    case Op::Atom: return "<atom>";
    case Op::Top: return "true";
    case Op::Bottom: return "false";
    case Op::Not: return "~";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Knows: return "K";
    case Op::Entails: return "E";
    case Op::Believes: return "B";
    case Op::Box: return "[]";
    case Op::Diamond: return "<>";
    case Op::EffortBox: return "[*]";
    case Op::EffortDiamond: return "<*>";
  }
  return "?";
}

FormulaPtr atom(std::string name) {
  if (!valid_atom_name(name))
    throw Error("invalid atom name: '" + name + "'");
  return make(Op::Atom, std::move(name), {});
}

FormulaPtr top() { return make(Op::Top, {}, {}); }
FormulaPtr bottom() { return make(Op::Bottom, {}, {}); }

FormulaPtr neg(FormulaPtr f) { return make(Op::Not, {}, {std::move(f)}); }

FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return make(Op::And, {}, {std::move(a), std::move(b)});
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  return make(Op::Or, {}, {std::move(a), std::move(b)});
}
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return make(Op::Implies, {}, {std::move(a), std::move(b)});
}
FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  return make(Op::Iff, {}, {std::move(a), std::move(b)});
}

FormulaPtr knows(FormulaPtr f) { return make(Op::Knows, {}, {std::move(f)}); }
FormulaPtr entails(FormulaPtr f) { return make(Op::Entails, {}, {std::move(f)}); }
FormulaPtr believes(FormulaPtr f) { return make(Op::Believes, {}, {std::move(f)}); }
FormulaPtr box(FormulaPtr f) { return make(Op::Box, {}, {std::move(f)}); }
FormulaPtr diamond(FormulaPtr f) { return make(Op::Diamond, {}, {std::move(f)}); }
FormulaPtr effort_box(FormulaPtr f) { return make(Op::EffortBox, {}, {std::move(f)}); }
FormulaPtr effort_diamond(FormulaPtr f) {
  return make(Op::EffortDiamond, {}, {std::move(f)});
}

bool struct_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return a && b && *a == *b;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  std::unordered_set<const Formula*, FormulaHash, FormulaEq> seen;
  // Explicit stack, post-order: children pushed before the node is emitted.
  struct Item {
    FormulaPtr node;
    bool expanded;
  };
  std::vector<Item> stack{{f, false}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (seen.count(it.node.get())) continue;
    if (it.expanded) {
      seen.insert(it.node.get());
      out.push_back(it.node);
    } else {
      stack.push_back({it.node, true});
      const auto& kids = it.node->children();
      for (auto k = kids.rbegin(); k != kids.rend(); ++k)
        stack.push_back({*k, false});
    }
  }
  return out;
}

int modal_depth(const FormulaPtr& f) {
  int best = 0;
  for (const auto& k : f->children()) best = std::max(best, modal_depth(k));
  return best + (is_modal(f->op()) ? 1 : 0);
}

std::set<std::string> atom_names(const FormulaPtr& f) {
  std::set<std::string> out;
  for (const auto& sub : subformulas(f))
    if (sub->op() == Op::Atom) out.insert(sub->atom_name());
  return out;
}

std::size_t node_count(const FormulaPtr& f) {
  std::size_t n = 1;
  for (const auto& k : f->children()) n += node_count(k);
  return n;
}

std::uint32_t op_mask(const FormulaPtr& f) {
  std::uint32_t m = std::uint32_t{1} << static_cast<int>(f->op());
  for (const auto& k : f->children()) m |= op_mask(k);
  return m;
}

namespace {

// Precedence levels: <-> (1) < -> (2) < | (3) < & (4) < unary (5) < leaf (6).
int precedence(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    default: return is_unary(op) ? 5 : 6;
  }
}

void render(const FormulaPtr& f, std::string& out) {
  const Op op = f->op();
  switch (op) {
    case Op::Atom:
      out += f->atom_name();
      return;
    case Op::Top:
      out += "true";
      return;
    case Op::Bottom:
      out += "false";
      return;
    default:
      break;
  }
  auto child = [&](const FormulaPtr& c, bool needs_parens) {
    if (needs_parens) out += '(';
    render(c, out);
    if (needs_parens) out += ')';
  };
  if (is_unary(op)) {
    out += op_token(op);
    // K/E/B are letters; separate them from the operand.
    if (op == Op::Knows || op == Op::Entails || op == Op::Believes) out += ' ';
    child(f->child(0), precedence(f->child(0)->op()) < 5);
    return;
  }
  const int p = precedence(op);
  const int pl = precedence(f->child(0)->op());
  const int pr = precedence(f->child(1)->op());
  // -> is right-associative; the other binaries associate to the left.
  const bool right_assoc = (op == Op::Implies);
  child(f->child(0), right_assoc ? pl <= p : pl < p);
  out += ' ';
  out += op_token(op);
  out += ' ';
  child(f->child(1), right_assoc ? pr < p : pr <= p);
}

}  // namespace

std::string to_text(const FormulaPtr& f) {
  std::string out;
  render(f, out);
  return out;
}

}  // namespace evlab
