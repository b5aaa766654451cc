#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ocasync {

class Oca;

enum class Op : std::uint8_t { kTrue, kAtom, kNot, kAnd, kEX, kEU, kAU, kUA, kUE };

const char* op_name(Op op);
bool is_binary(Op op);
bool is_temporal(Op op);

// Immutable CTL+Sync syntax tree over the nine core node kinds. Structural
// equality coincides with equality of the printed form.
class Formula {
 public:
  static Formula truth();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula ex(Formula f);
  static Formula eu(Formula a, Formula b);
  static Formula au(Formula a, Formula b);
  static Formula ua(Formula a, Formula b);
  static Formula ue(Formula a, Formula b);
  static Formula make(Op op, std::vector<Formula> children, std::string atom = {});

  Op op() const { return node_->op; }
  const std::string& atom_name() const { return node_->atom; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }
  // Canonical concrete syntax; parse(text()) == *this.
  const std::string& text() const { return node_->text; }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.node_ == b.node_ || a.node_->text == b.node_->text;
  }
  friend bool operator<(const Formula& a, const Formula& b) { return a.text() < b.text(); }

 private:
  struct Node {
    Op op;
    std::string atom;
    std::vector<Formula> children;
    std::string text;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Precedence: unary > & > | > UA/UE (right-associative). "E a U b" and
// "A a U b" are mixfix with the left operand at UA/UE level and the right
// operand at unary level; "E[a U b]" is also accepted. Sugar: false, |, AX,
// EF, AF, EG, AG, FA, FE, GA, GE. Throws ParseError.
Formula parse_formula(const std::string& text);

int nesting_depth(const Formula& f);

// Distinct subtrees, children before parents.
std::vector<Formula> subformulas(const Formula& f);

std::vector<std::string> atoms_of(const Formula& f);

// Throws InputError naming the first atom not declared by the OCA.
void bind_check(const Formula& f, const std::vector<std::string>& declared_atoms);

// Only TRUE/ATOM/NOT/AND: truth depends on the control state alone.
bool is_state_formula(const Formula& f);

}  // namespace ocasync
