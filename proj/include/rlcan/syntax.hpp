#ifndef RLCAN_SYNTAX_HPP
#define RLCAN_SYNTAX_HPP

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rlcan/common.hpp"

namespace rlcan {

// Signature fragments. Lattice connectives (/\, \/) are always available;
// T and _|_ require bounds in the signature.
enum FragmentBits : unsigned {
  kFragBounds = 1,  // T, _|_
  kFragRL = 2,      // I, *, -*, *-
  kFragDual = 4,    // J, +, -+, +-
  kFragML = 8,      // <>, []
  kFragAll = 15,
};

enum class Kind {
  Var, Top, Bot, And, Or,
  UnitI, Fuse, LRes, RRes,      // I, a*b, a-*b, a*-b
  UnitJ, Par, DLRes, DRRes,     // J, a+b, a-+b, a+-b
  Dia, Box,
};

bool is_binary(Kind k);
bool is_unary(Kind k);
bool is_residual(Kind k);

// Immutable formula tree with shared subterms and structural equality.
class Formula {
 public:
  Formula() = default;  // null handle; invalid as a formula

  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula unit_i();
  static Formula unit_j();
  static Formula make(Kind k, Formula l, Formula r = {});

  bool is_null() const { return node_ == nullptr; }
  Kind kind() const;
  const std::string& var_name() const;
  Formula left() const;
  Formula right() const;
  Formula child() const { return left(); }  // unary operand

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  int depth() const;  // atoms have depth 0
  unsigned fragment() const;  // bits required to express this formula
  std::vector<std::string> variables() const;  // sorted, unique

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Inequation {
  Formula lhs, rhs;
  bool equality = false;  // false: lhs <= rhs, true: lhs == rhs

  unsigned fragment() const { return lhs.fragment() | rhs.fragment(); }
  std::vector<std::string> variables() const;
  bool operator==(const Inequation& o) const {
    return equality == o.equality && lhs == o.lhs && rhs == o.rhs;
  }
};

struct ParseOptions {
  // When set, variables outside this list raise UnknownVariable.
  const std::vector<std::string>* declared_vars = nullptr;
  // Connectives outside this fragment raise FragmentViolation.
  unsigned fragment = kFragAll;
};

// Errors: SyntaxError (witness = byte offset), UnknownVariable,
// FragmentViolation.
Result<Formula> parse_formula(std::string_view text, ParseOptions opts = {});
Result<Inequation> parse_inequation(std::string_view text,
                                    ParseOptions opts = {});

// Minimal-parentheses rendering; parse(print(f)) == f structurally.
std::string print(const Formula& f);
std::string print(const Inequation& e);

// Axiom schemata over metavariables. Families (FC1, FC2, FCd1, FCd2) carry
// several inequations.
struct AxiomSchema {
  std::string name;
  std::vector<std::string> metavars;
  std::vector<Inequation> shape;  // metavariables appear as Var nodes
};

struct SchemaOptions {
  // FCd2 is implemented exactly as printed ("I <= a -+ a"); this switch
  // substitutes J for the unit instead.
  bool fcd2_unit_j = false;
};

// All known schemata: DL1-DL6, ML1-ML2, DLd1-DLd6, FC1-FC6, FCd1-FCd6,
// e (exchange), c (contraction), lw, rw, wd (weak-distribution).
const std::vector<AxiomSchema>& schema_registry(SchemaOptions opts = {});
const AxiomSchema* find_schema(std::string_view name, SchemaOptions opts = {});

// Error: MissingMetavariable.
Result<std::vector<Inequation>> instantiate(
    const AxiomSchema& schema,
    const std::map<std::string, Formula>& assignment);

Formula substitute(const Formula& f,
                   const std::map<std::string, Formula>& assignment);

}  // namespace rlcan

#endif
