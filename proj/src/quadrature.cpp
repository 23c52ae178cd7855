#include "ibody/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ibody/errors.hpp"

namespace ibody {

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

void QuadratureSpec::validate() const {
  if (panel_nodes < 2)
    throw std::domain_error("QuadratureSpec: panel_nodes must be >= 2");
  if (abs_tol <= 0.0 && rel_tol <= 0.0)
    throw std::domain_error("QuadratureSpec: need a positive tolerance");
  if (max_panels < 1)
    throw std::domain_error("QuadratureSpec: max_panels must be >= 1");
}

double sphere_surface_area(int n) {
  if (n < 1) throw std::domain_error("sphere_surface_area: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) {
  if (n < 1) throw std::domain_error("ball_volume: n must be >= 1");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

//----------------------------------------------------------------------------
// Gauss-Legendre rules, computed by Newton iteration on the Legendre roots.

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess for the i-th root (descending order).
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n and P_n' by the three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int node_count) {
  if (node_count < 1)
    throw std::domain_error("gauss_legendre_rule: node_count must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(node_count);
  if (it == cache.end())
    it = cache.emplace(node_count, build_rule(node_count)).first;
  return it->second;
}

//----------------------------------------------------------------------------
// Adaptive panel integrator.

namespace {

double panel_sum(const std::function<double(double)>& g, double a, double b,
                 const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return sum * half;
}

struct Panel {
  double a, b;
  double value;  // refined (two-half) estimate
  double error;  // |refined - coarse|
};

Panel make_panel(const std::function<double(double)>& g, double a, double b,
                 const GaussLegendreRule& rule) {
  const double coarse = panel_sum(g, a, b, rule);
  const double mid = 0.5 * (a + b);
  const double fine = panel_sum(g, a, mid, rule) + panel_sum(g, mid, b, rule);
  return Panel{a, b, fine, std::abs(fine - coarse)};
}

}  // namespace

double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureSpec& spec,
                 std::span<const double> breakpoints) {
  spec.validate();
  if (!(a <= b)) throw std::domain_error("integrate: requires a <= b");
  if (a == b) return 0.0;
  const GaussLegendreRule& rule = gauss_legendre_rule(spec.panel_nodes);

  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a + 1e-14 && c < b - 1e-14) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) panels.push_back(make_panel(g, cuts[i], cuts[i + 1], rule));

  while (true) {
    double total = 0.0, err = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      err += p.error;
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (err <= tol) return total;
    if ((int)panels.size() >= spec.max_panels) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "integrate: panel budget exhausted (achieved %.3g, wanted "
                    "%.3g)",
                    err, tol);
      throw accuracy_error(msg, err);
    }
    auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const Panel& l, const Panel& r) { return l.error < r.error; });
    const double wa = worst->a, wb = worst->b, mid = 0.5 * (wa + wb);
    *worst = make_panel(g, wa, mid, rule);
    panels.push_back(make_panel(g, mid, wb, rule));
  }
}

namespace {

bool admissible_alpha(double alpha) {
  return alpha >= 0.0 || std::abs(alpha + 0.5) < 1e-12;
}

// Shared theta-form core: int_{theta_a}^{theta_b} g(x sin t) cos^{2a+1} t dt.
double theta_integral(const std::function<double(double)>& g, double a,
                      double b, double x, double alpha,
                      const QuadratureSpec& spec,
                      std::span<const double> breakpoints) {
  const double theta_a = std::asin(std::clamp(a / x, 0.0, 1.0));
  const double theta_b = std::asin(std::clamp(b / x, 0.0, 1.0));
  const double p = 2.0 * alpha + 1.0;
  std::vector<double> cuts;
  for (double t : breakpoints)
    if (t > a && t < b) cuts.push_back(std::asin(std::clamp(t / x, 0.0, 1.0)));
  auto integrand = [&](double theta) {
    const double c = std::cos(theta);
    return g(x * std::sin(theta)) * std::pow(c, p);
  };
  return integrate(integrand, theta_a, theta_b, spec, cuts);
}

}  // namespace

double integrate_weighted(const std::function<double(double)>& g, double a,
                          double b, double x, double alpha,
                          const QuadratureSpec& spec,
                          std::span<const double> breakpoints) {
  if (!(0.0 <= a && a < b && b <= x))
    throw std::domain_error("integrate_weighted: requires 0 <= a < b <= x");
  if (!admissible_alpha(alpha))
    throw std::domain_error(
        "integrate_weighted: alpha must be >= 0 or exactly -1/2");
  return std::pow(x, 2.0 * alpha + 1.0) *
         theta_integral(g, a, b, x, alpha, spec, breakpoints);
}

double integrate_weighted_scaled(const std::function<double(double)>& g,
                                 double a, double b, double x, double alpha,
                                 const QuadratureSpec& spec,
                                 std::span<const double> breakpoints) {
  if (!(0.0 <= a && a < b && b <= x))
    throw std::domain_error(
        "integrate_weighted_scaled: requires 0 <= a < b <= x");
  if (!admissible_alpha(alpha))
    throw std::domain_error(
        "integrate_weighted_scaled: alpha must be >= 0 or exactly -1/2");
  return theta_integral(g, a, b, x, alpha, spec, breakpoints);
}

}  // namespace ibody
