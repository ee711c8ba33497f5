// crofton-lab: symbolic expressions in x, y for the conformal scale
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "crofton/errors.hpp"

namespace crofton {

enum class ExprKind {
  Constant,
  VarX,
  VarY,
  Add,
  Sub,
  Mul,
  Div,
  Pow,  // base in lhs, constant exponent in value
  Neg,
  Sin,
  Cos,
  Exp,
  Log,
  Sqrt,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind;
  double value = 0.0;  // Constant value, or Pow exponent
  ExprPtr lhs;
  ExprPtr rhs;
};

// Immutable expression tree. Construction goes through parse() or
// derivative(); evaluation is deterministic (same tree, same point, same
// bits) and safe to share across threads.
class ExprTree {
 public:
  ExprTree() = default;
  explicit ExprTree(ExprPtr root) : root_(std::move(root)) {}

  // Grammar: + - * / ^ with standard precedence (^ above unary minus above
  // * / above + -), left-associative binaries, parentheses, functions
  // sin cos exp log sqrt, variables x and y. Exponents must be constant.
  static ExprTree parse(std::string_view source);

  double eval(double x, double y) const;

  // Exact symbolic partial derivative with light simplification
  // (constant folding, 0*t -> 0, 1*t -> t).
  ExprTree derivative(char var) const;

  std::string to_string() const;

  const ExprPtr& root() const { return root_; }
  bool empty() const { return root_ == nullptr; }

 private:
  ExprPtr root_;
};

// Postfix compilation of an ExprTree. Performs the same operations in the
// same order as ExprTree::eval, so results agree bit for bit; exists because
// the geodesic ODE evaluates the scale and its partials millions of times.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const ExprTree& tree);

  double eval(double x, double y) const;

  int op_count() const { return static_cast<int>(ops_.size()); }

 private:
  struct Op {
    ExprKind kind;
    double value;
  };
  std::vector<Op> ops_;
  int max_stack_ = 0;
};

}  // namespace crofton
