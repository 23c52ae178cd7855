#include "ibody/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ibody/errors.hpp"

namespace ibody {

namespace {

ExprPtr node(ExprKind k, double v, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  return std::make_shared<const Expr>(k, v, std::move(a), std::move(b));
}

bool is_const(const ExprPtr& e, double v) {
  return e->kind == ExprKind::Constant && e->value == v;
}

}  // namespace

double Expr::eval(double t) const {
  switch (kind) {
    case ExprKind::Constant: return value;
    case ExprKind::Var: return t;
    case ExprKind::Add: return a->eval(t) + b->eval(t);
    case ExprKind::Sub: return a->eval(t) - b->eval(t);
    case ExprKind::Mul: return a->eval(t) * b->eval(t);
    case ExprKind::Div: return a->eval(t) / b->eval(t);
    case ExprKind::Pow: return std::pow(a->eval(t), value);
    case ExprKind::Sin: return std::sin(a->eval(t));
    case ExprKind::Cos: return std::cos(a->eval(t));
    case ExprKind::Acos: return std::acos(a->eval(t));
    case ExprKind::Asin: return std::asin(a->eval(t));
  }
  return 0.0;
}

ExprPtr expr_constant(double v) { return node(ExprKind::Constant, v); }

ExprPtr expr_var() { return node(ExprKind::Var, 0.0); }

ExprPtr expr_add(ExprPtr a, ExprPtr b) {
  if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
    return expr_constant(a->value + b->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return node(ExprKind::Add, 0.0, std::move(a), std::move(b));
}

ExprPtr expr_sub(ExprPtr a, ExprPtr b) {
  if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
    return expr_constant(a->value - b->value);
  if (is_const(b, 0.0)) return a;
  return node(ExprKind::Sub, 0.0, std::move(a), std::move(b));
}

namespace {
bool same_tree(const ExprPtr& a, const ExprPtr& b);
}  // namespace

ExprPtr expr_mul(ExprPtr a, ExprPtr b) {
  if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
    return expr_constant(a->value * b->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return expr_constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  // Keep constants on the left so repeated differentiation folds them.
  if (b->kind == ExprKind::Constant) std::swap(a, b);
  if (a->kind == ExprKind::Constant && b->kind == ExprKind::Mul &&
      b->a->kind == ExprKind::Constant)
    return expr_mul(expr_constant(a->value * b->a->value), b->b);
  // u^p * u^q = u^{p+q}; in particular sqrt(u)*sqrt(u) collapses to u, which
  // keeps derivative trees finite where u has a simple zero.
  if (a->kind == ExprKind::Pow && b->kind == ExprKind::Pow &&
      same_tree(a->a, b->a))
    return expr_pow(a->a, a->value + b->value);
  return node(ExprKind::Mul, 0.0, std::move(a), std::move(b));
}

ExprPtr expr_div(ExprPtr a, ExprPtr b) {
  if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant &&
      b->value != 0.0)
    return expr_constant(a->value / b->value);
  if (is_const(a, 0.0)) return expr_constant(0.0);
  if (is_const(b, 1.0)) return a;
  return node(ExprKind::Div, 0.0, std::move(a), std::move(b));
}

namespace {

// Structural equality, used only by local rewrites.
bool same_tree(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->value != b->value) return false;
  if (a->a && (!b->a || !same_tree(a->a, b->a))) return false;
  if (!a->a && b->a) return false;
  if (a->b && (!b->b || !same_tree(a->b, b->b))) return false;
  if (!a->b && b->b) return false;
  return true;
}

// Matches 1 - t^2 written either as 1 - t*t or 1 - t^2.
bool is_one_minus_var_square(const ExprPtr& e) {
  if (!e || e->kind != ExprKind::Sub || !e->a ||
      e->a->kind != ExprKind::Constant || e->a->value != 1.0 || !e->b)
    return false;
  const ExprPtr& m = e->b;
  if (m->kind == ExprKind::Mul && m->a && m->b &&
      m->a->kind == ExprKind::Var && m->b->kind == ExprKind::Var)
    return true;
  return m->kind == ExprKind::Pow && m->value == 2.0 && m->a &&
         m->a->kind == ExprKind::Var;
}

// Matches 1 - g(u)*g(u) for g in {sin, cos} and returns u.
ExprPtr match_one_minus_square(const ExprPtr& e, ExprKind g) {
  if (e->kind != ExprKind::Sub || !e->a || e->a->kind != ExprKind::Constant ||
      e->a->value != 1.0)
    return nullptr;
  const ExprPtr& m = e->b;
  if (!m || m->kind != ExprKind::Mul || !m->a || !m->b) return nullptr;
  if (m->a->kind != g || m->b->kind != g) return nullptr;
  if (!same_tree(m->a->a, m->b->a)) return nullptr;
  return m->a->a;
}

}  // namespace

ExprPtr expr_pow(ExprPtr base, double exponent) {
  if (exponent == 0.0) return expr_constant(1.0);
  if (exponent == 1.0) return base;
  if (base->kind == ExprKind::Constant)
    return expr_constant(std::pow(base->value, exponent));
  if (base->kind == ExprKind::Pow)
    return expr_pow(base->a, base->value * exponent);
  if (exponent == 0.5) {
    // sqrt(1 - cos^2 u) = sin u and sqrt(1 - sin^2 u) = cos u, valid on our
    // [0, pi/2] domains.  Undoes the sin(arccos t) expansion after a
    // t -> cos(psi) substitution, keeping derivatives finite at psi = 0.
    if (ExprPtr u = match_one_minus_square(base, ExprKind::Cos))
      return expr_sin(std::move(u));
    if (ExprPtr u = match_one_minus_square(base, ExprKind::Sin))
      return expr_cos(std::move(u));
  }
  return node(ExprKind::Pow, exponent, std::move(base));
}

ExprPtr expr_sqrt(ExprPtr a) { return expr_pow(std::move(a), 0.5); }

ExprPtr expr_sin(ExprPtr a) {
  if (a->kind == ExprKind::Constant) return expr_constant(std::sin(a->value));
  // sin(arccos u) = sqrt(1 - u^2)
  if (a->kind == ExprKind::Acos) {
    ExprPtr u = a->a;
    return expr_sqrt(expr_sub(expr_constant(1.0), expr_mul(u, u)));
  }
  if (a->kind == ExprKind::Asin) return a->a;  // sin(arcsin u) = u
  return node(ExprKind::Sin, 0.0, std::move(a));
}

ExprPtr expr_cos(ExprPtr a) {
  if (a->kind == ExprKind::Constant) return expr_constant(std::cos(a->value));
  if (a->kind == ExprKind::Acos) return a->a;  // cos(arccos u) = u
  if (a->kind == ExprKind::Asin) {
    ExprPtr u = a->a;
    return expr_sqrt(expr_sub(expr_constant(1.0), expr_mul(u, u)));
  }
  return node(ExprKind::Cos, 0.0, std::move(a));
}

ExprPtr expr_acos(ExprPtr a) {
  if (a->kind == ExprKind::Constant) return expr_constant(std::acos(a->value));
  if (a->kind == ExprKind::Cos) return a->a;  // valid on our [0, pi/2] domains
  return node(ExprKind::Acos, 0.0, std::move(a));
}

ExprPtr expr_asin(ExprPtr a) {
  if (a->kind == ExprKind::Constant) return expr_constant(std::asin(a->value));
  if (a->kind == ExprKind::Sin) return a->a;
  return node(ExprKind::Asin, 0.0, std::move(a));
}

ExprPtr expr_diff(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant: return expr_constant(0.0);
    case ExprKind::Var: return expr_constant(1.0);
    case ExprKind::Add: return expr_add(expr_diff(e->a), expr_diff(e->b));
    case ExprKind::Sub: return expr_sub(expr_diff(e->a), expr_diff(e->b));
    case ExprKind::Mul:
      return expr_add(expr_mul(expr_diff(e->a), e->b),
                      expr_mul(e->a, expr_diff(e->b)));
    case ExprKind::Div:
      return expr_div(expr_sub(expr_mul(expr_diff(e->a), e->b),
                               expr_mul(e->a, expr_diff(e->b))),
                      expr_mul(e->b, e->b));
    case ExprKind::Pow:
      return expr_mul(
          expr_mul(expr_constant(e->value), expr_pow(e->a, e->value - 1.0)),
          expr_diff(e->a));
    case ExprKind::Sin: return expr_mul(expr_cos(e->a), expr_diff(e->a));
    case ExprKind::Cos:
      return expr_mul(expr_constant(-1.0),
                      expr_mul(expr_sin(e->a), expr_diff(e->a)));
    case ExprKind::Acos:
      return expr_mul(
          expr_constant(-1.0),
          expr_div(expr_diff(e->a),
                   expr_sqrt(expr_sub(expr_constant(1.0),
                                      expr_mul(e->a, e->a)))));
    case ExprKind::Asin:
      return expr_div(expr_diff(e->a),
                      expr_sqrt(expr_sub(expr_constant(1.0),
                                         expr_mul(e->a, e->a))));
  }
  return expr_constant(0.0);
}

ExprPtr expr_diff(const ExprPtr& e, int order) {
  if (order < 0) throw std::domain_error("expr_diff: order must be >= 0");
  ExprPtr r = e;
  for (int i = 0; i < order; ++i) r = expr_diff(r);
  return r;
}

ExprPtr expr_substitute(const ExprPtr& e, const ExprPtr& replacement) {
  switch (e->kind) {
    case ExprKind::Constant: return e;
    case ExprKind::Var: return replacement;
    case ExprKind::Add:
      return expr_add(expr_substitute(e->a, replacement),
                      expr_substitute(e->b, replacement));
    case ExprKind::Sub:
      return expr_sub(expr_substitute(e->a, replacement),
                      expr_substitute(e->b, replacement));
    case ExprKind::Mul:
      return expr_mul(expr_substitute(e->a, replacement),
                      expr_substitute(e->b, replacement));
    case ExprKind::Div:
      return expr_div(expr_substitute(e->a, replacement),
                      expr_substitute(e->b, replacement));
    case ExprKind::Pow:
      return expr_pow(expr_substitute(e->a, replacement), e->value);
    case ExprKind::Sin: return expr_sin(expr_substitute(e->a, replacement));
    case ExprKind::Cos: return expr_cos(expr_substitute(e->a, replacement));
    case ExprKind::Acos: return expr_acos(expr_substitute(e->a, replacement));
    case ExprKind::Asin: return expr_asin(expr_substitute(e->a, replacement));
  }
  return e;
}

ExprPtr expr_flip(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant: return e;
    case ExprKind::Var:
      return expr_sqrt(
          expr_sub(expr_constant(1.0), expr_mul(expr_var(), expr_var())));
    case ExprKind::Pow:
      // (1 - t^2)^p maps to t^{2p} exactly; rewriting it in one step keeps
      // the derivative trees finite at the endpoints.
      if (is_one_minus_var_square(e->a)) {
        return expr_pow(expr_var(), 2.0 * e->value);
      }
      return expr_pow(expr_flip(e->a), e->value);
    case ExprKind::Sub:
      if (is_one_minus_var_square(e)) {
        return expr_mul(expr_var(), expr_var());
      }
      return expr_sub(expr_flip(e->a), expr_flip(e->b));
    case ExprKind::Add: return expr_add(expr_flip(e->a), expr_flip(e->b));
    case ExprKind::Mul: return expr_mul(expr_flip(e->a), expr_flip(e->b));
    case ExprKind::Div: return expr_div(expr_flip(e->a), expr_flip(e->b));
    case ExprKind::Sin: return expr_sin(expr_flip(e->a));
    case ExprKind::Cos: return expr_cos(expr_flip(e->a));
    case ExprKind::Acos: return expr_acos(expr_flip(e->a));
    case ExprKind::Asin: return expr_asin(expr_flip(e->a));
  }
  return e;
}

bool expr_is_constant(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant: return true;
    case ExprKind::Var: return false;
    case ExprKind::Pow:
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Acos:
    case ExprKind::Asin: return expr_is_constant(e->a);
    default: return expr_is_constant(e->a) && expr_is_constant(e->b);
  }
}

//----------------------------------------------------------------------------
// Printing.

namespace {

std::string fmt_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Parenthesize by precedence: Add/Sub = 1, Mul/Div = 2, Pow/unary = 3.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    default: return 3;
  }
}

std::string print(const ExprPtr& e);

std::string print_wrapped(const ExprPtr& e, int parent_prec) {
  std::string s = print(e);
  if (precedence(*e) < parent_prec) return "(" + s + ")";
  return s;
}

std::string print(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
      return e->value < 0.0 ? "(" + fmt_number(e->value) + ")"
                            : fmt_number(e->value);
    case ExprKind::Var: return "t";
    case ExprKind::Add:
      return print_wrapped(e->a, 1) + " + " + print_wrapped(e->b, 2);
    case ExprKind::Sub:
      return print_wrapped(e->a, 1) + " - " + print_wrapped(e->b, 2);
    case ExprKind::Mul:
      return print_wrapped(e->a, 2) + " * " + print_wrapped(e->b, 3);
    case ExprKind::Div:
      return print_wrapped(e->a, 2) + " / " + print_wrapped(e->b, 3);
    case ExprKind::Pow:
      if (e->value == 0.5) return "sqrt(" + print(e->a) + ")";
      return print_wrapped(e->a, 3) + "^(" + fmt_number(e->value) + ")";
    case ExprKind::Sin: return "sin(" + print(e->a) + ")";
    case ExprKind::Cos: return "cos(" + print(e->a) + ")";
    case ExprKind::Acos: return "arccos(" + print(e->a) + ")";
    case ExprKind::Asin: return "arcsin(" + print(e->a) + ")";
  }
  return "";
}

}  // namespace

std::string expr_to_string(const ExprPtr& e) { return print(e); }

//----------------------------------------------------------------------------
// Recursive-descent parser.

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view var)
      : text_(text), var_(var) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected trailing input at position " + std::to_string(pos_));
    return e;
  }

 private:
  std::string_view text_, var_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw schema_error("expression parse error: " + why + " in \"" +
                       std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_]))
      ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    while (true) {
      if (eat('+')) e = expr_add(e, parse_term());
      else if (eat('-')) e = expr_sub(e, parse_term());
      else return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (true) {
      if (eat('*')) e = expr_mul(e, parse_unary());
      else if (eat('/')) e = expr_div(e, parse_unary());
      else return e;
    }
  }

  ExprPtr parse_unary() {
    if (eat('-'))
      return expr_mul(expr_constant(-1.0), parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (eat('^')) {
      // Exponents must reduce to a real constant.
      ExprPtr exponent = parse_unary();
      if (!expr_is_constant(exponent))
        fail("exponent must be a constant expression");
      return expr_pow(base, exponent->eval(0.0));
    }
    return base;
  }

  ExprPtr parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit((unsigned char)c) || c == '.') return parse_number();
    if (std::isalpha((unsigned char)c)) return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += end - begin;
    return expr_constant(v);
  }

  ExprPtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "pi") return expr_constant(std::numbers::pi_v<double>);
    if (name == var_) return expr_var();
    auto arg = [&]() {
      if (!eat('(')) fail("expected '(' after function name");
      ExprPtr e = parse_sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    };
    if (name == "sqrt") return expr_sqrt(arg());
    if (name == "sin") return expr_sin(arg());
    if (name == "cos") return expr_cos(arg());
    if (name == "arccos" || name == "acos") return expr_acos(arg());
    if (name == "arcsin" || name == "asin") return expr_asin(arg());
    fail("unknown identifier \"" + std::string(name) + "\"");
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view text, std::string_view var_name) {
  return Parser(text, var_name).run();
}

}  // namespace ibody
