// radon.hpp - the section-volume transform for bodies of revolution and its
// inverse.
//
// Forward: for a body L in R^n with profile f(t), the intersection body K
// has
//     rho_K(arcsin x) = (2 omega_{n-2} / ((n-1) x^{n-3}))
//                       * int_0^x f(t)^{n-1} (x^2 - t^2)^{(n-4)/2} dt,
// computed here in the substituted form whose integrand is smooth and whose
// value stays finite at the pole x = 0.
//
// Inverse (even n): the integral inversion formula collapses, after the
// s = t^2 reduction of the (1/t d/dt)^{n-2} operator, to an exact LOCAL
// differential operator
//     F(t) = sum_{j=0}^{n/2-1} c_j(n) t^j R^(j)(t),      R(x) = rho_K(arcsin x),
// so closed-form profiles invert symbolically and fitted profiles need only
// n/2 - 1 spectral derivatives.  The coefficients c_j(n) absorb the (n-1)
// normalization that makes forward(inverse(K)) == K.
#pragma once

#include <vector>

#include "ibody/profile.hpp"
#include "ibody/quadrature.hpp"

namespace ibody {

struct Atom {
  double t0 = 0.0;
  double weight = 0.0;
};

/// The signed function-plus-atoms object F whose transform gives rho_K.
/// For a star body generator, F = f^{n-1} and atoms is empty.
struct GeneratingDensity {
  int n = 0;
  PiecewiseProfile F;
  std::vector<Atom> atoms;

  /// Validates n >= 3, atom locations strictly inside (0,1) and distinct.
  GeneratingDensity(int n, PiecewiseProfile F, std::vector<Atom> atoms = {});
};

/// The generating density of a star body: F = f^{n-1}, no atoms.
GeneratingDensity density_of(const BodyOfRevolution& L);

/// Forward transform output: samples plus a piecewise Chebyshev fit in the
/// x variable (x = sin of the angle from the axis), split at the images of
/// the generator's breakpoints.
struct TransformResult {
  int n = 0;
  std::vector<double> grid;    // x values, ascending, in (0, 1]
  std::vector<double> values;  // rho_K(arcsin x) at the grid
  PiecewiseProfile fit_x;      // same function of x on [0, 1]
  double pole = 0.0;           // rho_K(0)

  double eval(double x) const { return fit_x(x); }

  /// The transform as a body of revolution with a t-parametrized profile
  /// (refit through t = sqrt(1 - x^2); breakpoints map accordingly).
  BodyOfRevolution as_body() const;
};

/// Forward transform of the body's density f^{n-1}.  Grid defaults to 200
/// uniform x values plus all breakpoint images.  Requires n >= 4; throws
/// accuracy_error naming the worst grid point when quadrature fails.
TransformResult intersection_body(const BodyOfRevolution& L,
                                  const QuadratureSpec& spec = {},
                                  std::vector<double> grid = {});

/// rho_K(0) = kappa_{n-1} f(0)^{n-1}.
double pole_value(const BodyOfRevolution& L);

/// Transform of a full density (continuous part plus atoms) at one x in
/// (0, 1].  An atom at t0 contributes its closed-form kernel
///     w * 2 omega_{n-2} / ((n-1) x^{n-3}) * (x^2 - t0^2)^{(n-4)/2}
/// once x >= t0.  Needs n >= 4.
double transform_density_value(const GeneratingDensity& density, double x,
                               const QuadratureSpec& spec = {});

/// Coefficients c_j(n), j = 0..n/2-1, of the local inverse operator.
/// Even n >= 4 only.
std::vector<double> local_inverse_terms(int n);

/// Inverse transform of a body whose profile is rho_K in t-parametrization.
/// Even 4 <= n <= 10; odd n throws unsupported_error.  `max_degree` caps
/// the Chebyshev refits used for non-symbolic pieces.
GeneratingDensity inverse_density(const BodyOfRevolution& K,
                                  int max_degree = 256,
                                  const QuadratureSpec& spec = {});

/// Same inverse applied directly to a forward-transform result (its x-fit
/// is already the function R the operator differentiates).
GeneratingDensity inverse_density(const TransformResult& K,
                                  int max_degree = 256,
                                  const QuadratureSpec& spec = {});

}  // namespace ibody
