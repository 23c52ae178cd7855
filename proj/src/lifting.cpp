#include "ibody/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ibody/chebyshev.hpp"
#include "ibody/errors.hpp"

namespace ibody {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double profile_scale(const PiecewiseProfile& f) {
  double scale = 1.0;
  for (const Piece& p : f.pieces()) {
    for (int i = 0; i <= 16; ++i) {
      const double t = p.lo + (p.hi - p.lo) * i / 16.0;
      const double v = p.eval(t);
      if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
    }
  }
  return scale;
}

}  // namespace

ConvexityResult is_equator_convex(const PiecewiseProfile& f) {
  const double tol = 1e-11 * profile_scale(f);
  const int samples = 400;
  for (const Piece& p : f.pieces()) {
    for (int i = 0; i <= samples; ++i) {
      const double t = p.lo + (p.hi - p.lo) * i / double(samples);
      // (t f)' = f + t f'; at t = 0 the product rule term vanishes.
      const double slope =
          t == 0.0 ? p.eval(0.0) : p.eval(t) + t * p.derivative(t, 1);
      if (slope < -tol) return {false, t};
    }
  }
  for (double b : f.breakpoints()) {
    // A downward value jump of t f(t) breaks monotonicity no matter how
    // the one-sided slopes behave.
    if (b * f.jump(b, 0) < -tol) return {false, b};
  }
  return {true, 0.0};
}

GeneratingDensity lift(const GeneratingDensity& density) {
  if (!density.atoms.empty()) {
    throw unsupported_error(
        "lift: input density carries atoms; differentiating them needs a "
        "higher distributional order than is tracked");
  }
  const int n = density.n;
  const double front = (n + 1) / (2.0 * kPi);
  std::vector<Piece> pieces;
  for (const Piece& p : density.F.pieces()) {
    Piece q;
    q.lo = p.lo;
    q.hi = p.hi;
    if (p.is_symbolic()) {
      ExprPtr slope = expr_mul(expr_constant(1.0 / (n - 1)),
                               expr_mul(expr_var(), expr_diff(p.expr)));
      q.expr = expr_mul(expr_constant(front), expr_add(p.expr, slope));
    } else {
      ChebSeries slope =
          cheb_scale(cheb_mul_s(p.cheb->derivative()), 1.0 / (n - 1));
      ChebSeries sum = cheb_scale(cheb_add(*p.cheb, slope), front);
      sum.truncate();
      q.cheb = std::move(sum);
    }
    pieces.push_back(std::move(q));
  }
  PiecewiseProfile lifted(std::move(pieces), /*is_signed=*/true);

  std::vector<Atom> atoms;
  for (double b : density.F.breakpoints()) {
    const double jump = density.F.jump(b, 0);
    const double scale =
        std::max({1.0, std::abs(density.F.eval(b, Side::Left)),
                  std::abs(density.F.eval(b, Side::Right))});
    if (std::abs(jump) > 1e-11 * scale) {
      atoms.push_back({b, front * b * jump / (n - 1.0)});
    }
  }
  return GeneratingDensity(n + 2, std::move(lifted), std::move(atoms));
}

PiecewiseProfile generator(const GeneratingDensity& density) {
  if (!density.atoms.empty()) {
    throw unsupported_error(
        "generator: density carries atoms; no star body has a "
        "distributional density");
  }
  double argmin = 0.0;
  const double mn = density.F.min_value(&argmin);
  if (mn < -1e-13 * profile_scale(density.F)) {
    throw not_star_body_error("density is negative near t = " +
                                  format_double(argmin) + " (value " +
                                  format_double(mn) + ")",
                              argmin);
  }
  PiecewiseProfile root = pointwise_power(density.F, 1.0 / (density.n - 1));
  // Nonnegativity is established above, so the root is a plain radial
  // profile, not a signed density.
  std::vector<Piece> pieces = root.pieces();
  return PiecewiseProfile(std::move(pieces), /*is_signed=*/false);
}

BodyOfRevolution generator_body(const GeneratingDensity& density) {
  return BodyOfRevolution(density.n, generator(density));
}

const char* to_string(NextDimensionVerdict v) {
  switch (v) {
    case NextDimensionVerdict::IntersectionBodyOfStarBody:
      return "intersection_body_of_star_body";
    case NextDimensionVerdict::IntersectionBodyOnly:
      return "intersection_body_only";
    case NextDimensionVerdict::NotIntersectionBody:
      return "not_intersection_body";
  }
  return "unknown";
}

NextDimensionVerdict verdict_next_dimension(const BodyOfRevolution& L) {
  const ConvexityResult cv = is_equator_convex(L.profile);
  if (!cv.convex) return NextDimensionVerdict::NotIntersectionBody;
  for (double b : L.profile.breakpoints()) {
    const double scale =
        std::max({1.0, std::abs(L.profile.eval(b, Side::Left)),
                  std::abs(L.profile.eval(b, Side::Right))});
    if (std::abs(L.profile.jump(b, 0)) > 1e-9 * scale ||
        std::abs(L.profile.jump(b, 1)) > 1e-9 * scale) {
      return NextDimensionVerdict::IntersectionBodyOnly;
    }
  }
  return NextDimensionVerdict::IntersectionBodyOfStarBody;
}

}  // namespace ibody
