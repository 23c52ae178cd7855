// profile.hpp - piecewise-analytic radial profiles of bodies of revolution.
//
// A profile is a function f(t) on t in [0,1], where t is the cosine of the
// angle measured from the axis of revolution: t=1 is the pole, t=0 the
// equator.  Pieces carry either a closed-form Expr (exactly differentiable)
// or a Chebyshev fit (spectrally differentiable).  Breakpoints are declared,
// never detected: smoothness classification is exact at declared seams and
// ill-posed anywhere else.
#pragma once

#include <optional>
#include <vector>

#include "ibody/chebyshev.hpp"
#include "ibody/expr.hpp"

namespace ibody {

enum class Side { Left, Right, Either };

struct Piece {
  double lo = 0.0;
  double hi = 1.0;
  ExprPtr expr;                    // set for closed-form pieces
  std::optional<ChebSeries> cheb;  // set for fitted pieces

  bool is_symbolic() const { return expr != nullptr; }
  double eval(double t) const;
  /// Exact derivative for Expr pieces, spectral for Cheb pieces.
  double derivative(double t, int order) const;
};

// Ownership convention at seams: a seam point belongs to the piece on its
// right, mirroring the half-open intervals the formulas are quoted with.
// Side::Either therefore evaluates the right piece at an interior seam.
class PiecewiseProfile {
 public:
  PiecewiseProfile() = default;
  /// Pieces must tile [0,1] contiguously in order; throws schema_error
  /// otherwise.  `is_signed` marks densities that may take negative values.
  explicit PiecewiseProfile(std::vector<Piece> pieces, bool is_signed = false);

  double eval(double t, Side side = Side::Either) const;
  double operator()(double t) const { return eval(t); }

  /// order <= 8; order 0 is eval.
  double derivative_at(double t, int order, Side side = Side::Either) const;

  /// Piecewise exact derivative with the same breakpoints.
  PiecewiseProfile derivative(int order = 1) const;

  /// Right-limit minus left-limit of the order-th derivative at a declared
  /// breakpoint; throws std::domain_error for any other t0.
  double jump(double t0, int order = 0) const;

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool is_signed() const { return signed_; }

  /// Sampled minimum over [0,1]; the sample grid touches every piece and
  /// both sides of every seam.  Reports the location through argmin.
  double min_value(double* argmin = nullptr, int samples_per_piece = 512) const;

  const Piece& piece_at(double t, Side side = Side::Either) const;

 private:
  std::vector<Piece> pieces_;
  std::vector<double> breakpoints_;
  bool signed_ = false;
};

/// f scaled by a positive constant factor.
PiecewiseProfile scale_profile(const PiecewiseProfile& f, double factor);

/// Pointwise f(t)^exponent; requires f > 0 for non-integer exponents.
/// Cheb pieces are refitted.
PiecewiseProfile pointwise_power(const PiecewiseProfile& f, double exponent);

// Angle-parametrized input: formulas in the angle from the axis, covering
// [0, pi/2].  Used for corpus entries and "phi" JSON bodies.
struct AnglePiece {
  double lo = 0.0;  // angles, radians
  double hi = 0.0;
  ExprPtr expr;     // variable is the angle
};

/// Converts angle pieces to t-parametrization via t = cos(angle);
/// substitution rewrites cos -> t and sin -> sqrt(1 - t^2), so purely
/// trigonometric formulas come out algebraic.  Throws schema_error when the
/// pieces do not cover [0, pi/2].
PiecewiseProfile from_phi(const std::vector<AnglePiece>& pieces,
                          bool is_signed = false);

struct BodyOfRevolution {
  int n = 0;
  PiecewiseProfile profile;

  /// Validates n >= 3 and strict positivity of the profile (star body
  /// about the origin); throws std::domain_error on violation.
  BodyOfRevolution(int n, PiecewiseProfile profile);
};

}  // namespace ibody
