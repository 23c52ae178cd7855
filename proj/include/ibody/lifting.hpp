// lifting.hpp - pushing a generating density two dimensions up.
//
// If F = f^{n-1} generates the intersection body K of L in R^n, the same K
// viewed in R^{n+2} is generated by
//     F_new(t) = (n+1) rho~(t),
//     rho~(t)  = (1/2pi) (F(t) + t F'(t) / (n-1))
//              = (1/2pi) f(t)^{n-2} (f(t) + t f'(t)),
// so K stays an intersection body two dimensions up exactly when t f(t) is
// nondecreasing (equator-convexity).  A jump of F at t0 differentiates into
// a Dirac atom of weight (n+1) t0 (Delta F) / (2pi (n-1)); a negative atom
// or a sign change certifies "not an intersection body".
#pragma once

#include "ibody/profile.hpp"
#include "ibody/radon.hpp"

namespace ibody {

/// Verdict of the equator-convexity test: is t |-> t f(t) nondecreasing on
/// [0, 1]?  On failure, witness holds a t where it strictly decreases
/// (either a sampled point with f + t f' < 0 or a breakpoint where the
/// value of t f(t) drops).
struct ConvexityResult {
  bool convex = false;
  double witness = 0.0;
};

ConvexityResult is_equator_convex(const PiecewiseProfile& f);

/// The lifting operator.  Input must be atom-free (an atom would
/// differentiate into a derivative of delta, which is beyond the
/// distributional order tracked here) -> unsupported_error.
GeneratingDensity lift(const GeneratingDensity& density);

/// The star-body profile f = F^{1/(n-1)} of an atom-free nonnegative
/// density.  Throws not_star_body_error (with witness) when F is negative
/// somewhere and unsupported_error when atoms are present.
PiecewiseProfile generator(const GeneratingDensity& density);

/// Convenience wrapper: the body of revolution with profile generator(d)
/// at the density's own dimension.
BodyOfRevolution generator_body(const GeneratingDensity& density);

enum class NextDimensionVerdict {
  IntersectionBodyOfStarBody,  // equator-convex and C^1 profile
  IntersectionBodyOnly,        // nonnegative but discontinuous-derivative density
  NotIntersectionBody,         // sign-changing density or negative atom
};

const char* to_string(NextDimensionVerdict v);

/// What the lifted density says about I(L) viewed two dimensions up.
NextDimensionVerdict verdict_next_dimension(const BodyOfRevolution& L);

}  // namespace ibody
