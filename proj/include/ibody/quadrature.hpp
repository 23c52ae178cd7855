// quadrature.hpp - sphere constants and adaptive Gauss-Legendre quadrature,
// including the weighted form  int_a^b g(t) (x^2 - t^2)^alpha dt  used by the
// section-volume transforms.
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ibody {

/// Tuning knobs for the adaptive panel integrator.
struct QuadratureSpec {
  int panel_nodes = 32;     // Gauss-Legendre nodes per panel
  double abs_tol = 1e-10;   // absolute accuracy target
  double rel_tol = 1e-10;   // relative accuracy target
  int max_panels = 256;     // refinement budget

  /// Throws std::domain_error when the knobs are inconsistent
  /// (panel_nodes < 2, no positive tolerance, max_panels < 1).
  void validate() const;
};

/// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_surface_area(int n);

/// Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
/// Satisfies n * ball_volume(n) == sphere_surface_area(n).
double ball_volume(int n);

/// Gauss-Legendre rule on [-1, 1]; nodes ascending, weights positive.
/// Cached per node count; safe for concurrent use.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(int node_count);

/// Adaptive integral of g over [a, b].  Seeds one panel per subinterval of
/// [a, b] cut at the supplied interior breakpoints, then bisects the panel
/// with the worst error estimate until the global estimate meets
/// max(abs_tol, rel_tol * |value|).  Throws accuracy_error when the panel
/// budget runs out.
double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureSpec& spec,
                 std::span<const double> breakpoints = {});

/// int_a^b g(t) (x^2 - t^2)^alpha dt  with  0 <= a < b <= x  and alpha either
/// real >= 0 or exactly -1/2.  The substitution t = x sin(theta) turns the
/// weight into cos^{2 alpha + 1}(theta), which is smooth for the admissible
/// alpha, so plain panels converge even when b == x.  Breakpoints are
/// locations in t where g changes formula.
double integrate_weighted(const std::function<double(double)>& g, double a,
                          double b, double x, double alpha,
                          const QuadratureSpec& spec,
                          std::span<const double> breakpoints = {});

/// Same integral divided by x^{2 alpha + 1}; evaluates the theta-form
/// directly so the value stays finite and accurate as x -> 0.
double integrate_weighted_scaled(const std::function<double(double)>& g,
                                 double a, double b, double x, double alpha,
                                 const QuadratureSpec& spec,
                                 std::span<const double> breakpoints = {});

}  // namespace ibody
