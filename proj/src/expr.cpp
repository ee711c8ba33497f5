// crofton-lab: expression parsing, evaluation, differentiation
#include "crofton/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace crofton {

namespace {

ExprPtr make_node(ExprKind kind, double value = 0.0, ExprPtr lhs = nullptr,
                  ExprPtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->value = value;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

ExprPtr make_const(double v) { return make_node(ExprKind::Constant, v); }

bool is_const(const ExprPtr& e, double v) {
  return e->kind == ExprKind::Constant && e->value == v;
}

[[noreturn]] void domain_fail(const char* what, double x, double y) {
  std::ostringstream os;
  os << what << " while evaluating at (" << x << ", " << y << ")";
  throw DomainError(os.str());
}

double apply_binary(ExprKind kind, double a, double b, double x, double y) {
  switch (kind) {
    case ExprKind::Add: return a + b;
    case ExprKind::Sub: return a - b;
    case ExprKind::Mul: return a * b;
    case ExprKind::Div:
      if (b == 0.0) domain_fail("division by zero", x, y);
      return a / b;
    default: break;
  }
  domain_fail("bad binary operator", x, y);
}

double apply_pow(double base, double expo, double x, double y) {
  if (base == 0.0 && expo < 0.0) domain_fail("zero raised to a negative power", x, y);
  if (base < 0.0 && expo != std::floor(expo))
    domain_fail("negative base with non-integer exponent", x, y);
  return std::pow(base, expo);
}

double apply_unary(ExprKind kind, double a, double x, double y) {
  switch (kind) {
    case ExprKind::Neg: return -a;
    case ExprKind::Sin: return std::sin(a);
    case ExprKind::Cos: return std::cos(a);
    case ExprKind::Exp: return std::exp(a);
    case ExprKind::Log:
      if (a <= 0.0) domain_fail("log of a non-positive value", x, y);
      return std::log(a);
    case ExprKind::Sqrt:
      if (a < 0.0) domain_fail("sqrt of a negative value", x, y);
      return std::sqrt(a);
    default: break;
  }
  domain_fail("bad unary operator", x, y);
}

double eval_node(const ExprNode& n, double x, double y) {
  switch (n.kind) {
    case ExprKind::Constant: return n.value;
    case ExprKind::VarX: return x;
    case ExprKind::VarY: return y;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
      return apply_binary(n.kind, eval_node(*n.lhs, x, y),
                          eval_node(*n.rhs, x, y), x, y);
    case ExprKind::Pow:
      return apply_pow(eval_node(*n.lhs, x, y), n.value, x, y);
    default:
      return apply_unary(n.kind, eval_node(*n.lhs, x, y), x, y);
  }
}

// --- parser -----------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    for (;;) {
      if (accept('+')) e = make_node(ExprKind::Add, 0.0, e, parse_product());
      else if (accept('-')) e = make_node(ExprKind::Sub, 0.0, e, parse_product());
      else return e;
    }
  }

  ExprPtr parse_product() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept('*')) e = make_node(ExprKind::Mul, 0.0, e, parse_unary());
      else if (accept('/')) e = make_node(ExprKind::Div, 0.0, e, parse_unary());
      else return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return make_node(ExprKind::Neg, 0.0, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    while (peek('^')) {
      std::size_t caret = pos_;
      ++pos_;
      ExprPtr expo = parse_unary_no_power();
      double c;
      if (!fold_constant(expo, c))
        throw ParseError("exponent must be a constant", caret);
      base = make_node(ExprKind::Pow, c, base);
    }
    return base;
  }

  // Right operand of '^': allows a sign, stops before another '^' so that
  // chained powers associate left.
  ExprPtr parse_unary_no_power() {
    if (accept('-')) return make_node(ExprKind::Neg, 0.0, parse_unary_no_power());
    if (accept('+')) return parse_unary_no_power();
    return parse_atom();
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError(std::string("expected number, variable, function or '(', got '") + c + "'",
                     pos_);
  }

  ExprPtr parse_number() {
    const char* begin = src_.data() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return make_const(v);
  }

  ExprPtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isalpha(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return make_node(ExprKind::VarX);
    if (name == "y") return make_node(ExprKind::VarY);
    ExprKind kind;
    if (name == "sin") kind = ExprKind::Sin;
    else if (name == "cos") kind = ExprKind::Cos;
    else if (name == "exp") kind = ExprKind::Exp;
    else if (name == "log") kind = ExprKind::Log;
    else if (name == "sqrt") kind = ExprKind::Sqrt;
    else
      throw ParseError("unknown identifier '" + std::string(name) +
                           "' (only x, y, sin, cos, exp, log, sqrt)",
                       start);
    if (!accept('(')) throw ParseError("expected '(' after function name", pos_);
    ExprPtr arg = parse_sum();
    if (!accept(')')) throw ParseError("expected ')'", pos_);
    return make_node(kind, 0.0, arg);
  }

  bool fold_constant(const ExprPtr& e, double& out) {
    if (!subtree_constant(e)) return false;
    out = eval_node(*e, 0.0, 0.0);
    return true;
  }

  static bool subtree_constant(const ExprPtr& e) {
    if (!e) return true;
    if (e->kind == ExprKind::VarX || e->kind == ExprKind::VarY) return false;
    return subtree_constant(e->lhs) && subtree_constant(e->rhs);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// --- simplifying constructors (used by the differentiator) -------------

bool both_const(const ExprPtr& a, const ExprPtr& b) {
  return a->kind == ExprKind::Constant && b->kind == ExprKind::Constant;
}

ExprPtr s_add(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (both_const(a, b)) return make_const(a->value + b->value);
  return make_node(ExprKind::Add, 0.0, std::move(a), std::move(b));
}

ExprPtr s_neg(ExprPtr a) {
  if (a->kind == ExprKind::Constant) return make_const(-a->value);
  if (a->kind == ExprKind::Neg) return a->lhs;
  return make_node(ExprKind::Neg, 0.0, std::move(a));
}

ExprPtr s_sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, 0.0)) return a;
  if (both_const(a, b)) return make_const(a->value - b->value);
  if (is_const(a, 0.0)) return s_neg(std::move(b));
  return make_node(ExprKind::Sub, 0.0, std::move(a), std::move(b));
}

ExprPtr s_mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (both_const(a, b)) return make_const(a->value * b->value);
  return make_node(ExprKind::Mul, 0.0, std::move(a), std::move(b));
}

ExprPtr s_div(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return make_const(0.0);
  if (is_const(b, 1.0)) return a;
  if (both_const(a, b) && b->value != 0.0) return make_const(a->value / b->value);
  return make_node(ExprKind::Div, 0.0, std::move(a), std::move(b));
}

ExprPtr s_pow(ExprPtr base, double c) {
  if (c == 1.0) return base;
  if (c == 0.0) return make_const(1.0);
  if (base->kind == ExprKind::Constant) return make_const(std::pow(base->value, c));
  return make_node(ExprKind::Pow, c, std::move(base));
}

ExprPtr diff_node(const ExprPtr& e, char var) {
  switch (e->kind) {
    case ExprKind::Constant: return make_const(0.0);
    case ExprKind::VarX: return make_const(var == 'x' ? 1.0 : 0.0);
    case ExprKind::VarY: return make_const(var == 'y' ? 1.0 : 0.0);
    case ExprKind::Add: return s_add(diff_node(e->lhs, var), diff_node(e->rhs, var));
    case ExprKind::Sub: return s_sub(diff_node(e->lhs, var), diff_node(e->rhs, var));
    case ExprKind::Mul:
      return s_add(s_mul(diff_node(e->lhs, var), e->rhs),
                   s_mul(e->lhs, diff_node(e->rhs, var)));
    case ExprKind::Div:
      // (u/v)' = (u' v - u v') / v^2
      return s_div(s_sub(s_mul(diff_node(e->lhs, var), e->rhs),
                         s_mul(e->lhs, diff_node(e->rhs, var))),
                   s_pow(e->rhs, 2.0));
    case ExprKind::Pow:
      // (u^c)' = c u^(c-1) u'
      return s_mul(s_mul(make_const(e->value), s_pow(e->lhs, e->value - 1.0)),
                   diff_node(e->lhs, var));
    case ExprKind::Neg: return s_neg(diff_node(e->lhs, var));
    case ExprKind::Sin:
      return s_mul(make_node(ExprKind::Cos, 0.0, e->lhs), diff_node(e->lhs, var));
    case ExprKind::Cos:
      return s_neg(s_mul(make_node(ExprKind::Sin, 0.0, e->lhs), diff_node(e->lhs, var)));
    case ExprKind::Exp:
      return s_mul(make_node(ExprKind::Exp, 0.0, e->lhs), diff_node(e->lhs, var));
    case ExprKind::Log: return s_div(diff_node(e->lhs, var), e->lhs);
    case ExprKind::Sqrt:
      // (sqrt u)' = u' / (2 sqrt u)
      return s_div(diff_node(e->lhs, var),
                   s_mul(make_const(2.0), make_node(ExprKind::Sqrt, 0.0, e->lhs)));
  }
  throw Error("differentiate: unreachable node kind");
}

// --- printer ------------------------------------------------------------

int precedence_of(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Neg: return 3;
    case ExprKind::Pow: return 4;
    default: return 5;
  }
}

void print_node(std::ostringstream& os, const ExprPtr& e, int parent_prec) {
  int prec = precedence_of(e->kind);
  bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (e->kind) {
    case ExprKind::Constant: {
      if (e->value < 0) {
        os << '(' << e->value << ')';
      } else {
        os << e->value;
      }
      break;
    }
    case ExprKind::VarX: os << 'x'; break;
    case ExprKind::VarY: os << 'y'; break;
    case ExprKind::Add:
      print_node(os, e->lhs, prec);
      os << '+';
      print_node(os, e->rhs, prec + 1);
      break;
    case ExprKind::Sub:
      print_node(os, e->lhs, prec);
      os << '-';
      print_node(os, e->rhs, prec + 1);
      break;
    case ExprKind::Mul:
      print_node(os, e->lhs, prec);
      os << '*';
      print_node(os, e->rhs, prec + 1);
      break;
    case ExprKind::Div:
      print_node(os, e->lhs, prec);
      os << '/';
      print_node(os, e->rhs, prec + 1);
      break;
    case ExprKind::Pow:
      print_node(os, e->lhs, prec + 1);
      os << '^';
      if (e->value < 0) os << '(' << e->value << ')';
      else os << e->value;
      break;
    case ExprKind::Neg:
      os << '-';
      print_node(os, e->lhs, prec + 1);
      break;
    case ExprKind::Sin: os << "sin("; print_node(os, e->lhs, 0); os << ')'; break;
    case ExprKind::Cos: os << "cos("; print_node(os, e->lhs, 0); os << ')'; break;
    case ExprKind::Exp: os << "exp("; print_node(os, e->lhs, 0); os << ')'; break;
    case ExprKind::Log: os << "log("; print_node(os, e->lhs, 0); os << ')'; break;
    case ExprKind::Sqrt: os << "sqrt("; print_node(os, e->lhs, 0); os << ')'; break;
  }
  if (parens) os << ')';
}

}  // namespace

ExprTree ExprTree::parse(std::string_view source) {
  if (source.empty()) throw ParseError("empty expression", 0);
  return ExprTree(Parser(source).parse());
}

double ExprTree::eval(double x, double y) const {
  if (!root_) throw Error("eval of empty expression");
  return eval_node(*root_, x, y);
}

ExprTree ExprTree::derivative(char var) const {
  if (var != 'x' && var != 'y') throw Error("derivative variable must be 'x' or 'y'");
  if (!root_) throw Error("derivative of empty expression");
  return ExprTree(diff_node(root_, var));
}

std::string ExprTree::to_string() const {
  if (!root_) return "";
  std::ostringstream os;
  os.precision(17);
  print_node(os, root_, 0);
  return os.str();
}

// --- compiled evaluation --------------------------------------------------

CompiledExpr::CompiledExpr(const ExprTree& tree) {
  if (tree.empty()) throw Error("compile of empty expression");
  // post-order flatten
  struct Frame {
    const ExprNode* node;
    bool expanded;
  };
  std::vector<Frame> stack{{tree.root().get(), false}};
  int depth = 0;
  std::vector<const ExprNode*> order;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.expanded) {
      order.push_back(f.node);
      continue;
    }
    stack.push_back({f.node, true});
    if (f.node->rhs) stack.push_back({f.node->rhs.get(), false});
    if (f.node->lhs) stack.push_back({f.node->lhs.get(), false});
  }
  ops_.reserve(order.size());
  for (const ExprNode* n : order) {
    ops_.push_back({n->kind, n->value});
    switch (n->kind) {
      case ExprKind::Constant:
      case ExprKind::VarX:
      case ExprKind::VarY: ++depth; break;
      case ExprKind::Add:
      case ExprKind::Sub:
      case ExprKind::Mul:
      case ExprKind::Div: --depth; break;
      default: break;  // unary and Pow keep depth
    }
    max_stack_ = std::max(max_stack_, depth);
  }
}

double CompiledExpr::eval(double x, double y) const {
  double fixed[64];
  fixed[0] = 0.0;
  std::vector<double> dyn;
  double* st = fixed;
  if (max_stack_ > 64) {
    dyn.resize(max_stack_);
    st = dyn.data();
  }
  int top = -1;
  for (const Op& op : ops_) {
    switch (op.kind) {
      case ExprKind::Constant: st[++top] = op.value; break;
      case ExprKind::VarX: st[++top] = x; break;
      case ExprKind::VarY: st[++top] = y; break;
      case ExprKind::Add: --top; st[top] = st[top] + st[top + 1]; break;
      case ExprKind::Sub: --top; st[top] = st[top] - st[top + 1]; break;
      case ExprKind::Mul: --top; st[top] = st[top] * st[top + 1]; break;
      case ExprKind::Div:
        --top;
        if (st[top + 1] == 0.0) domain_fail("division by zero", x, y);
        st[top] = st[top] / st[top + 1];
        break;
      case ExprKind::Pow: st[top] = apply_pow(st[top], op.value, x, y); break;
      default: st[top] = apply_unary(op.kind, st[top], x, y); break;
    }
  }
  return st[0];
}

}  // namespace crofton
