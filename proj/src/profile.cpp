#include "ibody/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ibody/errors.hpp"

namespace ibody {

namespace {

constexpr double kSeamTol = 1e-12;
constexpr int kMaxDerivativeOrder = 8;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void check_order(int order) {
  if (order < 0 || order > kMaxDerivativeOrder)
    throw std::domain_error("derivative order must be between 0 and 8, got " +
                            std::to_string(order));
}

}  // namespace

double Piece::eval(double t) const {
  return expr ? expr->eval(t) : cheb->eval(t);
}

double Piece::derivative(double t, int order) const {
  if (order == 0) return eval(t);
  if (expr) return expr_diff(expr, order)->eval(t);
  return cheb->derivative(order).eval(t);
}

PiecewiseProfile::PiecewiseProfile(std::vector<Piece> pieces, bool is_signed)
    : pieces_(std::move(pieces)), signed_(is_signed) {
  if (pieces_.empty()) throw schema_error("profile needs at least one piece");
  for (const Piece& p : pieces_) {
    if (!(p.lo < p.hi))
      throw schema_error("piece interval [" + fmt(p.lo) + ", " + fmt(p.hi) +
                         "] is empty or reversed");
    if (p.is_symbolic() == p.cheb.has_value())
      throw schema_error("piece must carry exactly one of expr and cheb");
  }
  if (std::abs(pieces_.front().lo) > kSeamTol ||
      std::abs(pieces_.back().hi - 1.0) > kSeamTol)
    throw schema_error("pieces must cover [0,1], got [" +
                       fmt(pieces_.front().lo) + ", " +
                       fmt(pieces_.back().hi) + "]");
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (std::abs(pieces_[i].hi - pieces_[i + 1].lo) > kSeamTol)
      throw schema_error("gap between pieces at t = " + fmt(pieces_[i].hi));
    breakpoints_.push_back(pieces_[i].hi);
  }
}

const Piece& PiecewiseProfile::piece_at(double t, Side side) const {
  if (pieces_.empty()) throw std::logic_error("uninitialized profile");
  if (t < -kSeamTol || t > 1.0 + kSeamTol)
    throw std::domain_error("profile argument " + fmt(t) +
                            " outside [0, 1]");
  t = std::clamp(t, 0.0, 1.0);
  // Arguments within rounding distance of a seam are treated as on it, so
  // cos(pi/4) and 1/sqrt(2) style one-ulp mismatches cannot flip pieces.
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (std::abs(t - pieces_[i].lo) <= kSeamTol) {
      t = pieces_[i].lo;
      break;
    }
  std::size_t i = 0;
  while (i + 1 < pieces_.size() && pieces_[i + 1].lo <= t) ++i;
  if (side == Side::Left && i > 0 && t <= pieces_[i].lo + kSeamTol)
    return pieces_[i - 1];
  return pieces_[i];
}

double PiecewiseProfile::eval(double t, Side side) const {
  return piece_at(t, side).eval(std::clamp(t, 0.0, 1.0));
}

double PiecewiseProfile::derivative_at(double t, int order, Side side) const {
  check_order(order);
  return piece_at(t, side).derivative(std::clamp(t, 0.0, 1.0), order);
}

PiecewiseProfile PiecewiseProfile::derivative(int order) const {
  check_order(order);
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const Piece& p : pieces_) {
    Piece d;
    d.lo = p.lo;
    d.hi = p.hi;
    if (p.expr) d.expr = expr_diff(p.expr, order);
    else d.cheb = p.cheb->derivative(order);
    out.push_back(std::move(d));
  }
  return PiecewiseProfile(std::move(out), /*is_signed=*/true);
}

double PiecewiseProfile::jump(double t0, int order) const {
  check_order(order);
  const double* match = nullptr;
  for (const double& b : breakpoints_)
    if (std::abs(b - t0) <= 1e-9 &&
        (!match || std::abs(b - t0) < std::abs(*match - t0)))
      match = &b;
  if (!match)
    throw std::domain_error("t0 = " + fmt(t0) +
                            " is not a declared breakpoint");
  return derivative_at(*match, order, Side::Right) -
         derivative_at(*match, order, Side::Left);
}

double PiecewiseProfile::min_value(double* argmin,
                                   int samples_per_piece) const {
  double best = std::numeric_limits<double>::infinity();
  double where = 0.0;
  for (const Piece& p : pieces_) {
    for (int k = 0; k <= samples_per_piece; ++k) {
      const double t = p.lo + (p.hi - p.lo) * k / samples_per_piece;
      const double v = p.eval(t);
      if (std::isnan(v)) continue;
      if (v < best) {
        best = v;
        where = t;
      }
    }
  }
  if (argmin) *argmin = where;
  return best;
}

PiecewiseProfile scale_profile(const PiecewiseProfile& f, double factor) {
  std::vector<Piece> out;
  out.reserve(f.pieces().size());
  for (const Piece& p : f.pieces()) {
    Piece q;
    q.lo = p.lo;
    q.hi = p.hi;
    if (p.expr) {
      q.expr = expr_mul(expr_constant(factor), p.expr);
    } else {
      std::vector<double> c = p.cheb->coefficients();
      for (double& v : c) v *= factor;
      q.cheb = ChebSeries(p.cheb->lo(), p.cheb->hi(), std::move(c),
                          std::abs(factor) * p.cheb->fit_residual());
    }
    out.push_back(std::move(q));
  }
  return PiecewiseProfile(std::move(out),
                          f.is_signed() || factor < 0.0);
}

PiecewiseProfile pointwise_power(const PiecewiseProfile& f, double exponent) {
  std::vector<Piece> out;
  out.reserve(f.pieces().size());
  for (const Piece& p : f.pieces()) {
    Piece q;
    q.lo = p.lo;
    q.hi = p.hi;
    if (p.expr) {
      q.expr = expr_pow(p.expr, exponent);
    } else {
      q.cheb = cheb_fit_adaptive(
          [&p, exponent](double t) { return std::pow(p.eval(t), exponent); },
          1e-12, p.lo, p.hi);
    }
    out.push_back(std::move(q));
  }
  return PiecewiseProfile(std::move(out), f.is_signed());
}

PiecewiseProfile from_phi(const std::vector<AnglePiece>& pieces,
                          bool is_signed) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (pieces.empty()) throw schema_error("no angle pieces given");
  for (const AnglePiece& p : pieces)
    if (!(p.lo < p.hi) || !p.expr)
      throw schema_error("angle piece needs lo < hi and a formula");
  if (std::abs(pieces.front().lo) > kSeamTol ||
      std::abs(pieces.back().hi - half_pi) > 1e-9)
    throw schema_error("angle pieces must cover [0, pi/2]");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (std::abs(pieces[i].hi - pieces[i + 1].lo) > kSeamTol)
      throw schema_error("gap between angle pieces at " + fmt(pieces[i].hi));

  // t = cos(angle) reverses orientation: the last angle piece becomes the
  // first t piece.
  std::vector<Piece> out;
  out.reserve(pieces.size());
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    Piece q;
    q.lo = std::cos(std::min(it->hi, half_pi));
    q.hi = std::cos(it->lo);
    if (std::abs(q.lo) < kSeamTol) q.lo = 0.0;
    if (std::abs(q.hi - 1.0) < kSeamTol) q.hi = 1.0;
    q.expr = expr_substitute(it->expr, expr_acos(expr_var()));
    out.push_back(std::move(q));
  }
  return PiecewiseProfile(std::move(out), is_signed);
}

BodyOfRevolution::BodyOfRevolution(int n_, PiecewiseProfile profile_)
    : n(n_), profile(std::move(profile_)) {
  if (n < 3)
    throw std::domain_error("body of revolution needs dimension n >= 3");
  if (profile.is_signed())
    throw std::domain_error("a radial profile cannot be a signed density");
  double where = 0.0;
  const double mn = profile.min_value(&where);
  if (!(mn > 0.0))
    throw std::domain_error("radial profile is not strictly positive near t = " +
                            fmt(where));
}

}  // namespace ibody
