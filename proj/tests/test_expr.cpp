#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "ibody/errors.hpp"
#include "ibody/expr.hpp"

using namespace ibody;

namespace {

// Central difference with Richardson step halving, good to ~1e-9 relative
// on smooth inputs away from singularities.
double diff_oracle(const ExprPtr& e, double t) {
  const double h = 1e-4;
  const double d1 = (e->eval(t + h) - e->eval(t - h)) / (2.0 * h);
  const double d2 = (e->eval(t + h / 2) - e->eval(t - h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

TEST_CASE("parse and evaluate simple forms") {
  CHECK(parse_expr("1")->eval(0.3) == 1.0);
  CHECK(parse_expr("t")->eval(0.3) == 0.3);
  CHECK(parse_expr("2*t + 1")->eval(0.25) == doctest::Approx(1.5));
  CHECK(parse_expr("1 - t*t")->eval(0.5) == doctest::Approx(0.75));
  CHECK(parse_expr("pi")->eval(0.0) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-16));
  CHECK(parse_expr("-t^2")->eval(3.0) == doctest::Approx(-9.0));
  CHECK(parse_expr("2/t/t")->eval(2.0) == doctest::Approx(0.5));
}

TEST_CASE("fractional powers and named functions") {
  ExprPtr e = parse_expr("(3*t/pi)^(1/3)");
  CHECK(e->eval(0.5) ==
        doctest::Approx(std::cbrt(1.5 / std::numbers::pi)).epsilon(1e-15));
  CHECK(parse_expr("sqrt(1 - t^2)")->eval(0.6) == doctest::Approx(0.8));
  CHECK(parse_expr("sin(t)")->eval(1.1) == doctest::Approx(std::sin(1.1)));
  CHECK(parse_expr("arccos(t)")->eval(0.4) == doctest::Approx(std::acos(0.4)));
  CHECK(parse_expr("acos(t)")->eval(0.4) == doctest::Approx(std::acos(0.4)));
  CHECK(parse_expr("1/(t + sqrt(1 - t^2))")->eval(0.5) ==
        doctest::Approx(1.0 / (0.5 + std::sqrt(0.75))));
}

TEST_CASE("alternate variable names") {
  ExprPtr e = parse_expr("cos(phi) + 1", "phi");
  CHECK(e->eval(0.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(parse_expr("cos(phi)", "t"), schema_error);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_expr(""), schema_error);
  CHECK_THROWS_AS(parse_expr("1 +"), schema_error);
  CHECK_THROWS_AS(parse_expr("(1 + t"), schema_error);
  CHECK_THROWS_AS(parse_expr("sin t"), schema_error);
  CHECK_THROWS_AS(parse_expr("bogus(t)"), schema_error);
  CHECK_THROWS_AS(parse_expr("t @ 2"), schema_error);
  CHECK_THROWS_AS(parse_expr("1 + t) * 2"), schema_error);
  // Variable exponents are outside the grammar.
  CHECK_THROWS_AS(parse_expr("2^t"), schema_error);
}

TEST_CASE("constant folding happens at build time") {
  CHECK(parse_expr("2 + 3*4")->kind == ExprKind::Constant);
  CHECK(parse_expr("2 + 3*4")->value == 14.0);
  CHECK(parse_expr("pi/2")->kind == ExprKind::Constant);
  CHECK(expr_is_constant(parse_expr("sqrt(2)/2")));
  CHECK(!expr_is_constant(parse_expr("sqrt(t)/2")));
  // 0 and 1 identities prune the tree.
  CHECK(expr_add(expr_var(), expr_constant(0.0))->kind == ExprKind::Var);
  CHECK(expr_mul(expr_var(), expr_constant(1.0))->kind == ExprKind::Var);
  CHECK(expr_mul(expr_var(), expr_constant(0.0))->value == 0.0);
  CHECK(expr_pow(expr_var(), 1.0)->kind == ExprKind::Var);
}

TEST_CASE("derivatives match finite differences") {
  const char* samples[] = {
      "t^3 - 2*t",
      "1/t",
      "sqrt(1 - t^2)",
      "(3*t/pi)^(1/3)",
      "sin(2*t)*cos(t)",
      "1/(t + sqrt(1 - t^2))",
      "(2 - 6*t^2 + 5*t^4)^(1/3)",
  };
  for (const char* s : samples) {
    ExprPtr e = parse_expr(s);
    ExprPtr d = expr_diff(e);
    for (double t : {0.31, 0.5, 0.77}) {
      INFO(s << " at t=" << t);
      CHECK(d->eval(t) == doctest::Approx(diff_oracle(e, t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("higher order derivatives of a cubic terminate") {
  ExprPtr e = parse_expr("t^3");
  CHECK(expr_diff(e, 2)->eval(0.5) == doctest::Approx(3.0));
  CHECK(expr_diff(e, 3)->eval(0.5) == doctest::Approx(6.0));
  CHECK(expr_diff(e, 4)->kind == ExprKind::Constant);
  CHECK(expr_diff(e, 4)->value == 0.0);
}

TEST_CASE("inverse trig derivatives") {
  ExprPtr d = expr_diff(parse_expr("arccos(t)"));
  CHECK(d->eval(0.6) == doctest::Approx(-1.0 / 0.8).epsilon(1e-14));
  d = expr_diff(parse_expr("arcsin(t)"));
  CHECK(d->eval(0.6) == doctest::Approx(1.0 / 0.8).epsilon(1e-14));
}

TEST_CASE("substitution rewrites trig of inverse trig to algebraic form") {
  // 1/sin(phi) under phi -> arccos(t) becomes 1/sqrt(1 - t^2).
  ExprPtr e = parse_expr("1/sin(phi)", "phi");
  ExprPtr g = expr_substitute(e, expr_acos(expr_var()));
  const std::string s = expr_to_string(g);
  CHECK(s.find("sin") == std::string::npos);
  CHECK(s.find("arccos") == std::string::npos);
  CHECK(g->eval(0.8) == doctest::Approx(1.0 / 0.6).epsilon(1e-14));

  // cos(phi) -> t exactly.
  ExprPtr c = expr_substitute(parse_expr("cos(phi)", "phi"),
                              expr_acos(expr_var()));
  CHECK(c->kind == ExprKind::Var);
}

TEST_CASE("substituting sqrt(1 - x^2) gives the orthogonal slice view") {
  // f(t) = 1/t viewed through t = sqrt(1 - x^2).
  ExprPtr f = parse_expr("1/t");
  ExprPtr x_form = expr_substitute(f, expr_sqrt(parse_expr("1 - t^2")));
  CHECK(x_form->eval(0.6) == doctest::Approx(1.0 / 0.8).epsilon(1e-14));
}

TEST_CASE("printed form parses back to the same string") {
  const char* samples[] = {
      "t^3 - 2*t",
      "1/(t + sqrt(1 - t^2))",
      "(2 - 6*t^2 + 5*t^4)^(1/3)",
      "sin(2*t)*cos(t) + arcsin(t/2)",
      "-t^2 + 3",
  };
  for (const char* s : samples) {
    ExprPtr e = parse_expr(s);
    const std::string once = expr_to_string(e);
    const std::string twice = expr_to_string(parse_expr(once));
    INFO(s);
    CHECK(once == twice);
    CHECK(parse_expr(once)->eval(0.43) ==
          doctest::Approx(e->eval(0.43)).epsilon(1e-15));
  }
}

TEST_CASE("derivative of a printed derivative stays consistent") {
  ExprPtr e = parse_expr("(1 - t^2)^(3/2)");
  ExprPtr d2 = expr_diff(e, 2);
  ExprPtr round = parse_expr(expr_to_string(d2));
  for (double t : {0.1, 0.5, 0.9})
    CHECK(round->eval(t) == doctest::Approx(d2->eval(t)).epsilon(1e-14));
}

TEST_CASE("the flip involution rewrites cleanly at the endpoints") {
  // (1 - t^2)^p becomes t^{2p} in one step, so the flipped tree has finite
  // derivatives where the naive substitution hits 0 * inf.
  ExprPtr inv_sqrt = expr_flip(parse_expr("(1 - t^2)^(-1/2)"));
  CHECK(inv_sqrt->eval(0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(expr_diff(inv_sqrt)->eval(1.0) == doctest::Approx(-1.0).epsilon(1e-14));

  ExprPtr lin = expr_flip(parse_expr("sqrt(1 - t^2)"));
  CHECK(lin->eval(0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(expr_diff(lin)->eval(0.0) == doctest::Approx(1.0).epsilon(1e-15));

  ExprPtr sq = expr_flip(parse_expr("1 - t*t"));
  CHECK(sq->eval(0.7) == doctest::Approx(0.49).epsilon(1e-15));
  CHECK(expr_diff(sq)->eval(0.0) == doctest::Approx(0.0).epsilon(1e-15));

  // Flip twice is the identity pointwise.
  ExprPtr f = parse_expr("(2*t + sqrt(1 - t^2))/(5*t^2 - 1)");
  ExprPtr ff = expr_flip(expr_flip(f));
  for (double t : {0.75, 0.8, 0.95}) {
    CHECK(ff->eval(t) == doctest::Approx(f->eval(t)).epsilon(1e-13));
  }
}

TEST_CASE("products of equal square roots collapse to the radicand") {
  ExprPtr u = parse_expr("1 - t*t");
  ExprPtr prod = expr_mul(expr_sqrt(u), expr_sqrt(u));
  CHECK(prod->eval(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(expr_diff(prod)->eval(1.0) == doctest::Approx(-2.0).epsilon(1e-15));
}
