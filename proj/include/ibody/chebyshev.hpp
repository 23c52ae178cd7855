// chebyshev.hpp - Chebyshev series on an interval: fitting, Clenshaw
// evaluation, spectral differentiation, and the radial operator
// (1/t d/dt)^k expressed as 2^k (d/ds)^k in the substituted variable s = t^2.
#pragma once

#include <functional>
#include <vector>

namespace ibody {

/// Truncated Chebyshev expansion sum_k c_k T_k(y) with y the affine image of
/// the stored interval [lo, hi] onto [-1, 1].
class ChebSeries {
 public:
  ChebSeries() = default;
  ChebSeries(double lo, double hi, std::vector<double> coefficients,
             double fit_residual = 0.0);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int degree() const { return (int)coef_.size() - 1; }
  const std::vector<double>& coefficients() const { return coef_; }

  /// Residual estimate recorded by the fit that produced this series
  /// (max sampled error, or an amplification bound after differentiation).
  double fit_residual() const { return residual_; }

  double eval(double s) const;
  double operator()(double s) const { return eval(s); }

  /// Derivative with respect to s (domain scaling included).
  ChebSeries derivative() const;
  ChebSeries derivative(int order) const;

  /// Drops trailing coefficients below eps * max|c_k|.
  void truncate(double eps = 1e-15);

  /// Largest magnitude among the trailing pair of coefficients, a cheap
  /// convergence indicator for the stored expansion.
  double tail_magnitude() const;

 private:
  double lo_ = 0.0, hi_ = 1.0;
  std::vector<double> coef_{0.0};
  double residual_ = 0.0;
};

/// Interpolates f at the degree+1 Chebyshev extrema of [lo, hi] and verifies
/// the result against f at off-grid points.  Throws accuracy_error when the
/// sampled residual exceeds tol.
ChebSeries cheb_fit(const std::function<double(double)>& f, int degree,
                    double tol, double lo = 0.0, double hi = 1.0);

/// Doubles the degree (starting from 16) until the sampled residual drops
/// below tol or max_degree is reached; throws accuracy_error on failure.
ChebSeries cheb_fit_adaptive(const std::function<double(double)>& f,
                             double tol, double lo = 0.0, double hi = 1.0,
                             int max_degree = 1024);

/// Applies (1/t d/dt)^k to H given as a series in s = t^2, i.e. returns
/// 2^k (d/ds)^k H.  Throws accuracy_error when the stored expansion is too
/// short or too noisy to survive k differentiations.
ChebSeries inv_t_ddt_power(const ChebSeries& H, int k);

/// Coefficient-level arithmetic.  cheb_add requires both operands to share
/// the same interval; cheb_mul_s multiplies by the independent variable
/// exactly via the shift y T_k = (T_{k+1} + T_{|k-1|}) / 2.  Residual
/// estimates combine conservatively.
ChebSeries cheb_scale(const ChebSeries& s, double factor);
ChebSeries cheb_add(const ChebSeries& a, const ChebSeries& b);
ChebSeries cheb_mul_s(const ChebSeries& s);

}  // namespace ibody
