#include "ibody/radon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ibody/errors.hpp"

namespace ibody {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Transform value at a single x > 0.  The kernel (x^2 - t^2)^{(n-4)/2} and
// the outer 1/x^{n-3} are folded into integrate_weighted_scaled, whose
// theta substitution keeps the integrand smooth and the value finite as
// x -> 0.
double transform_value(const PiecewiseProfile& F, int n, double x,
                       const QuadratureSpec& spec) {
  std::vector<double> cuts;
  for (double b : F.breakpoints()) {
    if (b < x) cuts.push_back(b);
  }
  const double alpha = (n - 4) / 2.0;
  const double front = 2.0 * sphere_surface_area(n - 2) / (n - 1.0);
  return front * integrate_weighted_scaled([&F](double t) { return F(t); },
                                           0.0, x, x, alpha, spec, cuts);
}

// Fits the transform on one cell between breakpoint images.  The sampler
// is smooth on the closed cell, so an adaptive fit converges fast; the
// tolerance cascade trades accuracy for robustness near hard seams and
// records nothing worse than the achieved residual in the series.
ChebSeries fit_transform_cell(const std::function<double(double)>& sample,
                              double lo, double hi) {
  const double tols[] = {3e-11, 1e-8, 1e-6};
  for (int i = 0; i < 2; ++i) {
    try {
      return cheb_fit_adaptive(sample, tols[i], lo, hi, 512);
    } catch (const accuracy_error&) {
    }
  }
  return cheb_fit_adaptive(sample, tols[2], lo, hi, 512);
}

// The inverse operator needs t^j * d^j/dt^j of fitted pieces.  Doing the
// multiplication on coefficients keeps it exact: interpolation through
// noisy cell-edge samples would smear edge error across the interior.
ChebSeries cheb_mul_t_pow(ChebSeries s, int j) {
  for (int i = 0; i < j; ++i) s = cheb_mul_s(s);
  return s;
}

// Applies F(t) = sum_j c_j t^j R^(j)(t) to every piece of an x-view profile.
PiecewiseProfile apply_local_inverse(int n, const PiecewiseProfile& R,
                                     int max_degree) {
  const std::vector<double> c = local_inverse_terms(n);
  std::vector<Piece> out;
  for (const Piece& p : R.pieces()) {
    Piece q;
    q.lo = p.lo;
    q.hi = p.hi;
    if (p.is_symbolic()) {
      ExprPtr sum = expr_constant(0.0);
      ExprPtr deriv = p.expr;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (j > 0) deriv = expr_diff(deriv);
        ExprPtr term = expr_mul(expr_constant(c[j]),
                                expr_mul(expr_pow(expr_var(), double(j)), deriv));
        sum = expr_add(sum, term);
      }
      q.expr = sum;
    } else {
      if (int(p.cheb->degree()) + int(c.size()) > max_degree) {
        throw accuracy_error(
            "inverse needs degree " +
                std::to_string(p.cheb->degree() + c.size()) +
                " on [" + format_double(p.lo) + ", " + format_double(p.hi) +
                "], above the requested cap; raise max_degree",
            double(p.cheb->degree() + c.size()));
      }
      ChebSeries acc = cheb_scale(*p.cheb, c[0]);
      ChebSeries deriv = *p.cheb;
      for (std::size_t j = 1; j < c.size(); ++j) {
        deriv = deriv.derivative();
        acc = cheb_add(acc, cheb_scale(cheb_mul_t_pow(deriv, int(j)), c[j]));
      }
      acc.truncate();
      q.cheb = std::move(acc);
    }
    out.push_back(std::move(q));
  }
  return PiecewiseProfile(std::move(out), /*is_signed=*/true);
}

// Rewrites a profile through the involution t = sqrt(1 - x^2).  Symbolic
// pieces substitute exactly; fitted pieces are refit in the new variable.
PiecewiseProfile flip_variable(const PiecewiseProfile& f, double fit_tol,
                               int max_degree) {
  std::vector<Piece> out;
  const auto& src = f.pieces();
  for (auto it = src.rbegin(); it != src.rend(); ++it) {
    const Piece& p = *it;
    Piece q;
    q.lo = std::sqrt(std::max(0.0, 1.0 - p.hi * p.hi));
    q.hi = std::sqrt(std::max(0.0, 1.0 - p.lo * p.lo));
    if (q.lo < 1e-12) q.lo = 0.0;
    if (q.hi > 1.0 - 1e-12) q.hi = 1.0;
    if (p.is_symbolic()) {
      q.expr = expr_flip(p.expr);
    } else {
      auto sample = [&p](double u) {
        double t = std::sqrt(std::max(0.0, 1.0 - u * u));
        return p.eval(std::clamp(t, p.lo, p.hi));
      };
      try {
        q.cheb = cheb_fit_adaptive(sample, fit_tol, q.lo, q.hi, max_degree);
      } catch (const accuracy_error&) {
        q.cheb = cheb_fit_adaptive(sample, 1e-6, q.lo, q.hi, max_degree);
      }
    }
    out.push_back(std::move(q));
  }
  return PiecewiseProfile(std::move(out), f.is_signed());
}

}  // namespace

GeneratingDensity::GeneratingDensity(int n_, PiecewiseProfile F_,
                                     std::vector<Atom> atoms_)
    : n(n_), F(std::move(F_)), atoms(std::move(atoms_)) {
  if (n < 3) throw std::domain_error("generating density needs dimension >= 3");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.t0 < b.t0; });
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].t0 > 0.0 && atoms[i].t0 < 1.0)) {
      throw schema_error("atom location " + format_double(atoms[i].t0) +
                         " outside (0, 1)");
    }
    if (i > 0 && atoms[i].t0 - atoms[i - 1].t0 <= 1e-12) {
      throw schema_error("duplicate atom location " +
                         format_double(atoms[i].t0));
    }
  }
}

GeneratingDensity density_of(const BodyOfRevolution& L) {
  return GeneratingDensity(L.n, pointwise_power(L.profile, double(L.n - 1)));
}

double pole_value(const BodyOfRevolution& L) {
  return ball_volume(L.n - 1) * std::pow(L.profile(0.0), double(L.n - 1));
}

double transform_density_value(const GeneratingDensity& density, double x,
                               const QuadratureSpec& spec) {
  spec.validate();
  const int n = density.n;
  if (n < 4) {
    throw std::domain_error("transform needs dimension >= 4, got " +
                            std::to_string(n));
  }
  if (!(x > 0.0 && x <= 1.0)) {
    throw std::domain_error("transform point " + format_double(x) +
                            " outside (0, 1]");
  }
  double value = transform_value(density.F, n, x, spec);
  const double front = 2.0 * sphere_surface_area(n - 2) / (n - 1.0);
  for (const Atom& a : density.atoms) {
    if (x >= a.t0) {
      value += a.weight * front *
               std::pow(x * x - a.t0 * a.t0, (n - 4) / 2.0) /
               std::pow(x, double(n - 3));
    }
  }
  return value;
}

TransformResult intersection_body(const BodyOfRevolution& L,
                                  const QuadratureSpec& spec,
                                  std::vector<double> grid) {
  spec.validate();
  if (L.n < 4) {
    throw std::domain_error("transform needs dimension >= 4, got " +
                            std::to_string(L.n));
  }
  PiecewiseProfile F = pointwise_power(L.profile, double(L.n - 1));

  if (grid.empty()) {
    for (int i = 1; i <= 200; ++i) grid.push_back(i / 200.0);
  } else {
    for (double x : grid) {
      if (!(x > 0.0 && x <= 1.0)) {
        throw std::domain_error("grid point " + format_double(x) +
                                " outside (0, 1]");
      }
    }
  }
  for (double b : F.breakpoints()) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a <= 1e-12; }),
             grid.end());

  TransformResult out;
  out.n = L.n;
  out.pole = pole_value(L);
  out.grid = grid;
  out.values.reserve(grid.size());
  for (double x : grid) {
    try {
      out.values.push_back(transform_value(F, L.n, x, spec));
    } catch (const accuracy_error& e) {
      throw accuracy_error("transform quadrature stalled at x = " +
                               format_double(x) + ": " + e.what(),
                           e.achieved());
    }
  }

  // Between breakpoint images the transform is smooth, so fit it cell by
  // cell.  Sampling uses a tightened quadrature: fit residuals, not
  // quadrature noise, should decide convergence.
  QuadratureSpec tight = spec;
  tight.abs_tol = std::min(spec.abs_tol, 1e-12);
  tight.rel_tol = std::min(spec.rel_tol, 1e-12);
  tight.max_panels = std::max(spec.max_panels, 512);
  std::vector<double> edges = {0.0};
  for (double b : F.breakpoints()) edges.push_back(b);
  edges.push_back(1.0);
  std::vector<Piece> cells;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double pole = out.pole;
    auto sample = [&F, n = L.n, &tight, pole](double x) {
      if (x == 0.0) return pole;
      return transform_value(F, n, x, tight);
    };
    Piece cell;
    cell.lo = edges[i];
    cell.hi = edges[i + 1];
    cell.cheb = fit_transform_cell(sample, cell.lo, cell.hi);
    cells.push_back(std::move(cell));
  }
  out.fit_x = PiecewiseProfile(std::move(cells));
  return out;
}

BodyOfRevolution TransformResult::as_body() const {
  return BodyOfRevolution(n, flip_variable(fit_x, 1e-10, 512));
}

std::vector<double> local_inverse_terms(int n) {
  if (n < 4 || n % 2 != 0) {
    throw unsupported_error("local inversion needs even dimension >= 4, got " +
                            std::to_string(n));
  }
  // Work with I(b, c) = int_0^t R(x) x^b (t^2 - x^2)^c dx.  Each application
  // of (1/t) d/dt sends I(b, c) to 2c I(b, c - 1); once c hits zero the
  // survivor is a pure boundary term coef * R^(j)(t) * t^a, and further
  // applications split it by the product rule:
  //   {coef, a, j} -> {coef * a, a - 2, j} + {coef, a - 1, j + 1}.
  // The gap a - j drops by exactly 2 per application, so after (n-2)/2
  // splits every survivor has a == j - 1 and one extra factor of t aligns
  // powers with derivative orders.
  const int p = (n - 4) / 2;
  const int steps = (n - 2) / 2;
  double seed = 1.0;
  for (int i = 1; i <= p; ++i) seed *= 2.0 * i;  // 2^p p!
  std::map<std::pair<int, int>, double> terms;   // (a, j) -> coefficient
  terms[{n - 3, 0}] = seed;
  for (int s = 0; s < steps; ++s) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [key, coef] : terms) {
      const auto [a, j] = key;
      if (a != 0) next[{a - 2, j}] += coef * a;
      next[{a - 1, j + 1}] += coef;
    }
    terms = std::move(next);
  }
  double factorial = 1.0;
  for (int i = 2; i <= n - 3; ++i) factorial *= i;
  const double front = (n - 1.0) / (factorial * sphere_surface_area(n - 1));
  std::vector<double> c(std::size_t(n / 2), 0.0);
  for (const auto& [key, coef] : terms) {
    const auto [a, j] = key;
    if (a + 1 != j) throw std::logic_error("inverse reduction misaligned");
    c.at(std::size_t(j)) = front * coef;
  }
  return c;
}

namespace {

void check_inverse_dimension(int n) {
  if (n % 2 != 0) {
    throw unsupported_error("inversion in odd dimension " + std::to_string(n) +
                            " is not implemented; the operator is nonlocal");
  }
  if (n < 4 || n > 10) {
    throw unsupported_error("inversion supports even dimensions 4..10, got " +
                            std::to_string(n));
  }
}

}  // namespace

GeneratingDensity inverse_density(const BodyOfRevolution& K, int max_degree,
                                  const QuadratureSpec& spec) {
  check_inverse_dimension(K.n);
  spec.validate();
  PiecewiseProfile R =
      flip_variable(K.profile, std::max(spec.abs_tol, 1e-12), max_degree);
  return GeneratingDensity(K.n, apply_local_inverse(K.n, R, max_degree));
}

GeneratingDensity inverse_density(const TransformResult& K, int max_degree,
                                  const QuadratureSpec& spec) {
  check_inverse_dimension(K.n);
  spec.validate();
  return GeneratingDensity(K.n, apply_local_inverse(K.n, K.fit_x, max_degree));
}

}  // namespace ibody
