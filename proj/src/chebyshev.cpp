#include "ibody/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ibody/errors.hpp"

namespace ibody {

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

ChebSeries::ChebSeries(double lo, double hi, std::vector<double> coefficients,
                       double fit_residual)
    : lo_(lo), hi_(hi), coef_(std::move(coefficients)), residual_(fit_residual) {
  if (!(hi_ > lo_)) throw std::domain_error("ChebSeries: requires hi > lo");
  if (coef_.empty()) coef_.push_back(0.0);
}

double ChebSeries::eval(double s) const {
  const double y = (2.0 * s - lo_ - hi_) / (hi_ - lo_);
  // Clenshaw recurrence.
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coef_.size() - 1; k >= 1; --k) {
    const double b0 = coef_[k] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coef_[0] + y * b1 - b2;
}

ChebSeries ChebSeries::derivative() const {
  const int n = degree();
  if (n == 0) return ChebSeries(lo_, hi_, {0.0}, residual_);
  std::vector<double> d(n + 1, 0.0);
  for (int k = n; k >= 1; --k)
    d[k - 1] = (k + 1 < n ? d[k + 1] : 0.0) + 2.0 * k * coef_[k];
  d[0] *= 0.5;
  d.resize(n);
  const double scale = 2.0 / (hi_ - lo_);
  for (double& c : d) c *= scale;
  // Differentiation amplifies the recorded residual by O(n^2 / length).
  const double amp = scale * n * n;
  return ChebSeries(lo_, hi_, std::move(d), residual_ * std::max(1.0, amp));
}

ChebSeries ChebSeries::derivative(int order) const {
  if (order < 0) throw std::domain_error("ChebSeries::derivative: order < 0");
  ChebSeries r = *this;
  for (int i = 0; i < order; ++i) r = r.derivative();
  return r;
}

void ChebSeries::truncate(double eps) {
  double scale = 0.0;
  for (double c : coef_) scale = std::max(scale, std::abs(c));
  const double cut = eps * scale;
  std::size_t keep = coef_.size();
  while (keep > 1 && std::abs(coef_[keep - 1]) <= cut) --keep;
  coef_.resize(keep);
}

double ChebSeries::tail_magnitude() const {
  const std::size_t n = coef_.size();
  double t = std::abs(coef_[n - 1]);
  if (n >= 2) t = std::max(t, std::abs(coef_[n - 2]));
  return t;
}

//----------------------------------------------------------------------------

namespace {

// Interpolation coefficients on the extrema grid y_j = cos(pi j / N).
std::vector<double> extrema_coefficients(const std::vector<double>& samples) {
  const int n = (int)samples.size() - 1;
  std::vector<double> coef(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double term = samples[j] * std::cos(kPi * j * k / n);
      acc += (j == 0 || j == n) ? 0.5 * term : term;
    }
    coef[k] = 2.0 * acc / n;
  }
  coef[0] *= 0.5;
  coef[n] *= 0.5;
  return coef;
}

}  // namespace

ChebSeries cheb_fit(const std::function<double(double)>& f, int degree,
                    double tol, double lo, double hi) {
  if (degree < 1) throw std::domain_error("cheb_fit: degree must be >= 1");
  if (!(hi > lo)) throw std::domain_error("cheb_fit: requires hi > lo");
  if (!(tol > 0.0)) throw std::domain_error("cheb_fit: tol must be positive");

  const int n = degree;
  std::vector<double> samples(n + 1);
  auto to_s = [&](double y) { return 0.5 * ((hi - lo) * y + lo + hi); };
  for (int j = 0; j <= n; ++j) samples[j] = f(to_s(std::cos(kPi * j / n)));
  ChebSeries series(lo, hi, extrema_coefficients(samples));

  // Residual check at the off-grid points interleaving the fit grid.
  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    const double s = to_s(std::cos(kPi * (j + 0.5) / n));
    residual = std::max(residual, std::abs(series.eval(s) - f(s)));
  }
  if (residual > tol)
    throw accuracy_error("cheb_fit: residual " + std::to_string(residual) +
                             " above tol at degree " + std::to_string(degree),
                         residual);
  ChebSeries out(lo, hi, series.coefficients(), residual);
  out.truncate();
  return out;
}

ChebSeries cheb_fit_adaptive(const std::function<double(double)>& f,
                             double tol, double lo, double hi,
                             int max_degree) {
  double last_residual = 0.0;
  for (int degree = 16; degree <= max_degree; degree *= 2) {
    try {
      return cheb_fit(f, degree, tol, lo, hi);
    } catch (const accuracy_error& e) {
      last_residual = e.achieved();
    }
  }
  throw accuracy_error(
      "cheb_fit_adaptive: residual " + std::to_string(last_residual) +
          " above tol at max degree " + std::to_string(max_degree),
      last_residual);
}

ChebSeries inv_t_ddt_power(const ChebSeries& H, int k) {
  if (k < 0) throw std::domain_error("inv_t_ddt_power: k must be >= 0");
  if (k == 0) return H;

  // The expansion must have converged: an unresolved tail turns into O(N^2)
  // garbage per differentiation.  A converged series (including an exactly
  // terminating polynomial) decays steeply across its final coefficients; a
  // flat tail means the fit degree was too low.
  const std::vector<double>& c = H.coefficients();
  const int n = (int)c.size() - 1;
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale > 0.0 && n >= 4) {
    const double last = std::abs(c[n]);
    double window = 0.0;
    for (int i = std::max(0, n - 4); i < n; ++i)
      window = std::max(window, std::abs(c[i]));
    if (last > 1e-10 * scale && last > 0.3 * window)
      throw accuracy_error(
          "inv_t_ddt_power: series tail has not converged; refit at higher "
          "degree before differentiating",
          last / scale);
  }

  ChebSeries r = H;
  for (int i = 0; i < k; ++i) {
    r = r.derivative();
    std::vector<double> c = r.coefficients();
    for (double& v : c) v *= 2.0;
    r = ChebSeries(r.lo(), r.hi(), std::move(c), 2.0 * r.fit_residual());
  }
  return r;
}

ChebSeries cheb_scale(const ChebSeries& s, double factor) {
  std::vector<double> c = s.coefficients();
  for (double& v : c) v *= factor;
  return ChebSeries(s.lo(), s.hi(), std::move(c),
                    std::abs(factor) * s.fit_residual());
}

ChebSeries cheb_add(const ChebSeries& a, const ChebSeries& b) {
  if (std::abs(a.lo() - b.lo()) > 1e-12 || std::abs(a.hi() - b.hi()) > 1e-12)
    throw std::invalid_argument("cheb_add: interval mismatch");
  std::vector<double> c = a.coefficients();
  const auto& cb = b.coefficients();
  if (cb.size() > c.size()) c.resize(cb.size(), 0.0);
  for (std::size_t k = 0; k < cb.size(); ++k) c[k] += cb[k];
  return ChebSeries(a.lo(), a.hi(), std::move(c),
                    a.fit_residual() + b.fit_residual());
}

ChebSeries cheb_mul_s(const ChebSeries& s) {
  const auto& a = s.coefficients();
  std::vector<double> shifted(a.size() + 1, 0.0);
  if (!a.empty()) shifted[1] += a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    shifted[k + 1] += 0.5 * a[k];
    shifted[k - 1] += 0.5 * a[k];
  }
  const double half_span = 0.5 * (s.hi() - s.lo());
  const double mid = 0.5 * (s.hi() + s.lo());
  std::vector<double> c(shifted.size(), 0.0);
  for (std::size_t k = 0; k < shifted.size(); ++k) c[k] = half_span * shifted[k];
  for (std::size_t k = 0; k < a.size(); ++k) c[k] += mid * a[k];
  const double amp = std::max(std::abs(s.lo()), std::abs(s.hi()));
  return ChebSeries(s.lo(), s.hi(), std::move(c), amp * s.fit_residual());
}

}  // namespace ibody
