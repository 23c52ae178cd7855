// expr.hpp - closed-form expression trees in one variable, with exact
// differentiation.  The grammar covers: numeric constants (including pi),
// the variable, + - * /, powers with real constant exponents, sqrt, sin,
// cos, arccos, arcsin.
#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace ibody {

enum class ExprKind {
  Constant,
  Var,
  Add,
  Sub,
  Mul,
  Div,
  Pow,  // value holds the real exponent; sqrt is stored as Pow 1/2
  Sin,
  Cos,
  Acos,
  Asin,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  ExprKind kind;
  double value = 0.0;  // Constant payload or Pow exponent
  ExprPtr a, b;

  Expr(ExprKind k, double v, ExprPtr lhs, ExprPtr rhs)
      : kind(k), value(v), a(std::move(lhs)), b(std::move(rhs)) {}

  double eval(double t) const;
};

// Builders fold constants and apply safe local simplifications (identities
// with 0 and 1, cos(arccos u) -> u, sin(arccos u) -> sqrt(1 - u^2), nested
// power collapse).  All symbolic layers go through these.
ExprPtr expr_constant(double v);
ExprPtr expr_var();
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_div(ExprPtr a, ExprPtr b);
ExprPtr expr_pow(ExprPtr base, double exponent);
ExprPtr expr_sqrt(ExprPtr a);
ExprPtr expr_sin(ExprPtr a);
ExprPtr expr_cos(ExprPtr a);
ExprPtr expr_acos(ExprPtr a);
ExprPtr expr_asin(ExprPtr a);

/// Exact derivative with respect to the variable.
ExprPtr expr_diff(const ExprPtr& e);
ExprPtr expr_diff(const ExprPtr& e, int order);

/// Replaces every occurrence of the variable with `replacement`.
ExprPtr expr_substitute(const ExprPtr& e, const ExprPtr& replacement);

/// The involution t -> sqrt(1 - t^2) on [0, 1].  Equivalent to
/// expr_substitute with that replacement, except that (1 - t^2)^p subtrees
/// are rewritten to t^{2p} in one step, so the result evaluates and
/// differentiates cleanly at both endpoints.
ExprPtr expr_flip(const ExprPtr& e);

/// True when the tree contains no Var node (evaluates to a constant).
bool expr_is_constant(const ExprPtr& e);

/// Round-trippable text form using the input grammar.
std::string expr_to_string(const ExprPtr& e);

/// Parses the textual grammar.  `var_name` is the accepted variable symbol
/// ("t", "phi", ...); "pi" is the only named constant.  Throws schema_error
/// on malformed input.
ExprPtr parse_expr(std::string_view text, std::string_view var_name = "t");

}  // namespace ibody
