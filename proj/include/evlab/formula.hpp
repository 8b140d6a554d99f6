#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace evlab {

// Node kinds of the modal language: atoms, Boolean connectives, the
// epistemic operators K (knowledge), E (evidence entailment), B (belief),
// [] / <> (knowability and its dual), and [*] / <*> (evidence intake and
// its dual). Diamonds are first-class nodes, not desugared; evaluators
// treat them by the dual clause.
enum class Op : std::uint8_t {
  Atom,
  Top,
  Bottom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Knows,          // K
  Entails,        // E
  Believes,       // B
  Box,            // []
  Diamond,        // <>
  EffortBox,      // [*]
  EffortDiamond,  // <*>
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Structural hash is computed at construction;
/// shared subtrees are fine (instantiating an axiom scheme reuses the
/// operand pointer).
class Formula {
 public:
  Op op() const { return op_; }
  const std::string& atom_name() const { return atom_; }
  std::size_t arity() const { return kids_.size(); }
  const FormulaPtr& child(std::size_t i = 0) const { return kids_[i]; }
  const std::vector<FormulaPtr>& children() const { return kids_; }
  std::size_t hash() const { return hash_; }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // Used by the builder functions below; not intended for direct calls.
  Formula(Op op, std::string atom, std::vector<FormulaPtr> kids);

 private:
  Op op_;
  std::string atom_;
  std::vector<FormulaPtr> kids_;
  std::size_t hash_;
};

bool is_unary(Op op);
bool is_binary(Op op);
bool is_modal(Op op);
const char* op_token(Op op);  // ASCII spelling ("~", "&", "K", "[*]", ...)

// Builders. atom() rejects names outside the identifier class
// [a-z][A-Za-z0-9_]* and the keywords true/false.
FormulaPtr atom(std::string name);
FormulaPtr top();
FormulaPtr bottom();
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr knows(FormulaPtr f);
FormulaPtr entails(FormulaPtr f);
FormulaPtr believes(FormulaPtr f);
FormulaPtr box(FormulaPtr f);
FormulaPtr diamond(FormulaPtr f);
FormulaPtr effort_box(FormulaPtr f);
FormulaPtr effort_diamond(FormulaPtr f);

bool struct_equal(const FormulaPtr& a, const FormulaPtr& b);

/// All subformulas including f itself, each structure exactly once,
/// children before parents.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

int modal_depth(const FormulaPtr& f);
std::set<std::string> atom_names(const FormulaPtr& f);
std::size_t node_count(const FormulaPtr& f);

/// Bitmask with bit (1 << int(op)) set for every operator occurring in f.
std::uint32_t op_mask(const FormulaPtr& f);
inline bool uses_op(std::uint32_t mask, Op op) {
  return mask & (std::uint32_t{1} << static_cast<int>(op));
}

/// Render with minimal parenthesization; parsing the result yields a
/// structurally identical formula.
std::string to_text(const FormulaPtr& f);

// Transparent hashing/equality for memo tables keyed by formula structure.
struct FormulaHash {
  std::size_t operator()(const Formula* f) const { return f->hash(); }
};
struct FormulaEq {
  bool operator()(const Formula* a, const Formula* b) const { return *a == *b; }
};

}  // namespace evlab
