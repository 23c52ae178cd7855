// sdt.hpp - Gaussian-window pairings that probe bodies with flat spots.
//
// Pairing the reciprocal norm 1/||(x, y)|| of a convex body with the test
// function u(y) h_m''(x), where h_m(x) = m (2 pi)^{-1/2} exp(-x^2 m^2 / 2)
// and u is the standard Gaussian density on the y-hyperplane, yields a
// number that must stay bounded below by -epsilon for every large m when
// the body is an intersection body.  For a body that is a direct sum of a
// segment and an (n-1)-dimensional ball, or a body of revolution with a
// flat face perpendicular to its axis, the pairing splits by integration
// by parts into components with known signs, and the negative components
// shrink like m^{4-n} for n >= 5.  This module computes the split, an
// independent no-integration-by-parts total, and the least-squares decay
// exponent of the negative part over a grid of window widths m.
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ibody/profile.hpp"
#include "ibody/quadrature.hpp"

namespace ibody {

/// One evaluation of the pairing at window width m, split into the terms
/// produced by integration by parts.  U_terms come from the axis region
/// |x| > ||y|| where the norm equals |x|:
///   U_terms[0] = -2 int u(y) h_m'(r) / r dy        (nonnegative)
///   U_terms[1] = -2 int u(y) h_m(r) / r^2 dy       (signed; negative here)
///   U_terms[2] =  4 int u(y) int_r^inf h_m(x)/x^3 dx dy   (nonnegative)
/// with r = ||y||.  W_term comes from the complementary region and equals
/// -2 m^2 int u(y) h_m(r) dy, so U_terms[0] + W_term = 0 identically.  For
/// a face body the face-region boundary and curvature terms are folded in:
/// the signed curvature term joins U_terms[1] and the two nonnegative
/// extras join U_terms[2], while W_term keeps the shared boundary form.
struct SdtBreakdown {
  double m = 0.0;
  std::array<double, 3> U_terms{};
  double W_term = 0.0;
  double total = 0.0;  // sum of the four components

  /// Sum of the strictly negative components; 0.0 when none is negative.
  double negative_part() const;
};

/// Body of revolution about the x-axis whose norm on the region
/// |x| < ||y|| is the 1-homogeneous gauge g(x, r) = r * gamma(x / r),
/// r = ||y||, carrying a flat (n-1)-dimensional face of radius 1 at
/// height |x| = 1.  gamma is stored on [0, 1] and extended evenly; the
/// constructor enforces gamma > 0, convexity, zero slope at u = 0 and
/// gamma(1) = 1, throwing std::domain_error on violation.
struct FaceBody {
  int n = 0;
  PiecewiseProfile gamma;

  FaceBody(int n, PiecewiseProfile gamma);
};

/// Named gauge profiles for face bodies:
///   "face_flat"     gamma(u) = 1                  (cylinder limit)
///   "face_quartic"  gamma(u) = ((1 + u^4)/2)^{1/4}  (flat cap: gamma''(0) = 0)
///   "face_round"    gamma(u) = ((1 + u^2)/2)^{1/2}  (round cap: gamma''(0) > 0)
/// Unknown names throw lookup_error.
FaceBody face_body(std::string_view name, int n);
const std::vector<std::string>& face_body_names();

/// Pairing for the cylinder (segment plus unit-ball direct sum) in R^n,
/// reduced to one-dimensional radial integrals.  Requires n >= 5
/// (unsupported_error otherwise) and m > 0 (std::domain_error).  Radial
/// integrals truncate at twelve standard deviations of their Gaussian
/// weights, a tail below 1e-25; quadrature failure raises accuracy_error.
SdtBreakdown sdt_cylinder(int n, double m, const QuadratureSpec& spec = {});

/// Pairing for a face body; the axis region matches sdt_cylinder and the
/// face region adds the gauge boundary and curvature terms.  Same
/// preconditions and failure modes as sdt_cylinder.
SdtBreakdown sdt_face_body(const FaceBody& body, double m,
                           const QuadratureSpec& spec = {});

/// The same pairing evaluated as a direct two-dimensional quadrature of
/// u(y) h_m''(x) / ||(x, y)|| with no integration by parts; an
/// independent check of SdtBreakdown::total.
double sdt_direct_total(int n, double m, const QuadratureSpec& spec = {});
double sdt_direct_total(const FaceBody& body, double m,
                        const QuadratureSpec& spec = {});

/// Least-squares slope of log|negative_part| against log m.  Requires at
/// least four distinct widths spanning a factor of eight and a
/// nonvanishing negative part at every width; throws std::domain_error
/// otherwise.
double scaling_fit(const std::vector<SdtBreakdown>& results);

}  // namespace ibody
