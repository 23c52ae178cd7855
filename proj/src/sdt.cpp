#include "ibody/sdt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "ibody/errors.hpp"
#include "ibody/expr.hpp"

namespace ibody {

namespace {

// e^{-r^2/2} drops below 1e-31 past twelve standard deviations, so every
// Gaussian-weighted radial integral is truncated there.
constexpr double kRadialCut = 12.0;
// e^{-z^2/2} underflows to zero well before this, so scaled-variable
// tails past it are exactly zero in double precision.
constexpr double kScaledCut = 37.0;

const double kInvRoot2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// The Gaussian window h_m and its first two derivatives.
double window(double m, double x) {
  return m * kInvRoot2Pi * std::exp(-0.5 * m * m * x * x);
}
double window_d1(double m, double x) { return -m * m * x * window(m, x); }
double window_d2(double m, double x) {
  return m * m * (m * m * x * x - 1.0) * window(m, x);
}

// For radial f, int_{R^{n-1}} u(y) f(||y||) dy equals
// gaussian_prefactor(n) * int_0^inf e^{-r^2/2} r^{n-2} f(r) dr.
double gaussian_prefactor(int n) {
  return sphere_surface_area(n - 1) *
         std::pow(2.0 * std::numbers::pi, -0.5 * (n - 1));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void check_width(double m) {
  if (!std::isfinite(m) || m <= 0.0)
    throw std::domain_error("window width m must be a positive real, got " +
                            format_double(m));
}

void check_dimension(int n) {
  if (n < 5)
    throw unsupported_error(
        "the pairing split needs dimension n >= 5; requested n = " +
        std::to_string(n));
}

// Seed cuts at the window scale so the adaptive integrator cannot miss a
// spike much narrower than the full radial range.
std::vector<double> window_cuts(double m, double hi) {
  std::vector<double> cuts;
  for (double c : {1.0 / m, kRadialCut / m})
    if (c > 0.0 && c < hi) cuts.push_back(c);
  return cuts;
}

// int_0^{kRadialCut} e^{-r^2/2} r^{power} q(r) dr.
double radial_integral(const std::function<double(double)>& q, int power,
                       double m, const QuadratureSpec& spec) {
  const std::vector<double> cuts = window_cuts(m, kRadialCut);
  return integrate(
      [&](double r) {
        return std::exp(-0.5 * r * r) * std::pow(r, power) * q(r);
      },
      0.0, kRadialCut, spec, cuts);
}

// Tails of the standard Gaussian against reciprocal powers:
//   g(a)          = int_a^inf e^{-z^2/2} / z   dz
//   cubic_tail(a) = int_a^inf e^{-z^2/2} / z^3 dz
// g splits off the logarithm below z = 1 so its integrand stays smooth;
// cubic_tail comes from g by one integration by parts.
class GaussianTails {
 public:
  explicit GaussianTails(const QuadratureSpec& spec)
      : spec_(spec),
        g_at_one_(integrate(
            [](double z) { return std::exp(-0.5 * z * z) / z; }, 1.0,
            kScaledCut, spec)) {}

  double g(double a) const {
    if (a >= kScaledCut) return 0.0;
    if (a >= 1.0)
      return integrate([](double z) { return std::exp(-0.5 * z * z) / z; }, a,
                       kScaledCut, spec_);
    const double smooth =
        integrate([](double z) { return std::expm1(-0.5 * z * z) / z; }, a,
                  1.0, spec_);
    return g_at_one_ - std::log(a) + smooth;
  }

  double cubic_tail(double a) const {
    if (a >= kScaledCut) return 0.0;
    return std::exp(-0.5 * a * a) / (2.0 * a * a) - 0.5 * g(a);
  }

 private:
  QuadratureSpec spec_;
  double g_at_one_;
};

// The three axis-region terms plus the shared boundary integral.  The
// boundary integral B = int u(y) h_m'(r)/r dy appears as -2B in the axis
// region and as +2B in the complementary region, so U_terms[0] and W_term
// are exact negatives.
struct AxisTerms {
  double u0 = 0.0, u1 = 0.0, u2 = 0.0, boundary = 0.0;
};

AxisTerms axis_terms(int n, double m, const QuadratureSpec& spec) {
  const double prefactor = gaussian_prefactor(n);
  const GaussianTails tails(spec);
  AxisTerms out;
  out.boundary =
      prefactor *
      radial_integral([&](double r) { return window_d1(m, r); }, n - 3, m,
                      spec);
  out.u0 = -2.0 * out.boundary;
  out.u1 = -2.0 * prefactor *
           radial_integral([&](double r) { return window(m, r); }, n - 4, m,
                           spec);
  // 2 int u(y) [ 2 int_r^inf h_m(x) x^{-3} dx ] dy; in the scaled variable
  // z = m x the inner tail is 2 m^3 (2 pi)^{-1/2} cubic_tail(m r).
  const double inner_scale = 2.0 * m * m * m * kInvRoot2Pi;
  out.u2 = 2.0 * prefactor *
           radial_integral(
               [&](double r) { return inner_scale * tails.cubic_tail(m * r); },
               n - 2, m, spec);
  return out;
}

SdtBreakdown assemble(double m, double u0, double u1, double u2, double w) {
  SdtBreakdown out;
  out.m = m;
  out.U_terms = {u0, u1, u2};
  out.W_term = w;
  out.total = u0 + u1 + u2 + w;
  return out;
}

std::vector<double> interior_breakpoints(const PiecewiseProfile& f) {
  std::vector<double> cuts;
  for (double b : f.breakpoints())
    if (b > 0.0 && b < 1.0) cuts.push_back(b);
  return cuts;
}

// int_0^1 h_m(u r) q(u) du with cuts at the gauge seams and at the window
// scale.
double face_inner(const std::function<double(double)>& q, double m, double r,
                  const std::vector<double>& gauge_cuts,
                  const QuadratureSpec& spec) {
  std::vector<double> cuts = gauge_cuts;
  const double window_edge = kRadialCut / (m * r);
  if (window_edge < 1.0) cuts.push_back(window_edge);
  std::sort(cuts.begin(), cuts.end());
  return integrate([&](double u) { return window(m, u * r) * q(u); }, 0.0,
                   1.0, spec, cuts);
}

double direct_total_impl(
    int n, double m, const std::function<double(double, double)>& gauge,
    const std::vector<double>& gauge_cuts, const QuadratureSpec& spec) {
  const double prefactor = gaussian_prefactor(n);
  const double window_edge = kRadialCut / m;

  // 2 int_r^inf h_m''(x) / x dx; the integrand is negligible past the
  // window edge.
  auto axis_part = [&](double r) {
    if (r >= window_edge) return 0.0;
    return 2.0 * integrate(
                     [&](double x) { return window_d2(m, x) / x; }, r,
                     window_edge, spec);
  };

  // 2 int_0^r h_m''(x) / gauge(x, r) dx, truncated at the window edge.
  auto face_part = [&](double r) {
    const double hi = std::min(r, window_edge);
    std::vector<double> cuts;
    for (double u : gauge_cuts) {
      const double x = u * r;
      if (x > 0.0 && x < hi) cuts.push_back(x);
    }
    return 2.0 * integrate(
                     [&](double x) { return window_d2(m, x) / gauge(x, r); },
                     0.0, hi, spec, cuts);
  };

  const std::vector<double> outer_cuts = window_cuts(m, kRadialCut);
  return prefactor *
         integrate(
             [&](double r) {
               return std::exp(-0.5 * r * r) * std::pow(r, n - 2) *
                      (axis_part(r) + face_part(r));
             },
             0.0, kRadialCut, spec, outer_cuts);
}

}  // namespace

double SdtBreakdown::negative_part() const {
  double sum = 0.0;
  for (double term : {U_terms[0], U_terms[1], U_terms[2], W_term})
    sum += std::min(term, 0.0);
  return sum;
}

FaceBody::FaceBody(int n_, PiecewiseProfile gamma_)
    : n(n_), gamma(std::move(gamma_)) {
  if (n < 3)
    throw std::domain_error("face body dimension must be at least 3, got " +
                            std::to_string(n));
  if (gamma.is_signed())
    throw std::domain_error("gamma must be an unsigned profile");
  double argmin = 0.0;
  const double lo = gamma.min_value(&argmin);
  if (!(lo > 0.0))
    throw std::domain_error("gamma must be strictly positive; minimum " +
                            format_double(lo) + " at u = " +
                            format_double(argmin));
  if (std::abs(gamma.eval(1.0) - 1.0) > 1e-9)
    throw std::domain_error(
        "gamma(1) must equal 1 (the face has radius 1 at height 1); got " +
        format_double(gamma.eval(1.0)));
  if (std::abs(gamma.derivative_at(0.0, 1, Side::Right)) > 1e-9)
    throw std::domain_error(
        "gamma must be flat at u = 0 so its even extension stays smooth");
  // Convexity: nonnegative curvature inside every piece, continuity and
  // upward slope kinks at the seams.
  const PiecewiseProfile curvature = gamma.derivative(2);
  for (const Piece& piece : gamma.pieces()) {
    for (int i = 0; i < 65; ++i) {
      const double u = piece.lo + (piece.hi - piece.lo) * (i + 0.5) / 65.0;
      if (curvature.eval(u) < -1e-9)
        throw std::domain_error("gamma must be convex; curvature " +
                                format_double(curvature.eval(u)) +
                                " at u = " + format_double(u));
    }
  }
  for (double b : interior_breakpoints(gamma)) {
    if (std::abs(gamma.jump(b, 0)) > 1e-9)
      throw std::domain_error("gamma must be continuous; value jump at u = " +
                              format_double(b));
    if (gamma.jump(b, 1) < -1e-9)
      throw std::domain_error(
          "gamma must be convex; downward slope kink at u = " +
          format_double(b));
  }
  // Even and convex puts the minimum on the axis.
  if (lo < gamma.eval(0.0, Side::Right) - 1e-9)
    throw std::domain_error("gamma must attain its minimum at u = 0");
}

FaceBody face_body(std::string_view name, int n) {
  auto one_piece = [](const char* formula) {
    return PiecewiseProfile({Piece{0.0, 1.0, parse_expr(formula, "u"), {}}});
  };
  if (name == "face_flat") return FaceBody(n, one_piece("1"));
  if (name == "face_quartic")
    return FaceBody(n, one_piece("((1 + u^4)/2)^(1/4)"));
  if (name == "face_round")
    return FaceBody(n, one_piece("((1 + u^2)/2)^(1/2)"));
  throw lookup_error("unknown face body \"" + std::string(name) + "\"");
}

const std::vector<std::string>& face_body_names() {
  static const std::vector<std::string> names = {"face_flat", "face_quartic",
                                                 "face_round"};
  return names;
}

SdtBreakdown sdt_cylinder(int n, double m, const QuadratureSpec& spec) {
  check_dimension(n);
  check_width(m);
  spec.validate();
  const AxisTerms axis = axis_terms(n, m, spec);
  return assemble(m, axis.u0, axis.u1, axis.u2, 2.0 * axis.boundary);
}

SdtBreakdown sdt_face_body(const FaceBody& body, double m,
                           const QuadratureSpec& spec) {
  check_dimension(body.n);
  check_width(m);
  spec.validate();
  const int n = body.n;
  const double prefactor = gaussian_prefactor(n);
  const AxisTerms axis = axis_terms(n, m, spec);

  const PiecewiseProfile& gamma = body.gamma;
  const PiecewiseProfile slope = gamma.derivative(1);
  const PiecewiseProfile curvature = gamma.derivative(2);
  const std::vector<double> gauge_cuts = interior_breakpoints(gamma);

  // Face-region boundary term 2 gamma'(1) int u(y) h_m(r) / r^2 dy.
  const double slope_at_face = gamma.derivative_at(1.0, 1, Side::Left);
  const double boundary_moment =
      prefactor * radial_integral([&](double r) { return window(m, r); },
                                  n - 4, m, spec);
  const double face_boundary = 2.0 * slope_at_face * boundary_moment;

  // Curvature term -2 int u(y) int_0^r h_m(x) g_xx / g^2 dx dy and slope
  // term 4 int u(y) int_0^r h_m(x) g_x^2 / g^3 dx dy, both rewritten with
  // x = u r so the gauge enters through gamma alone.
  auto curvature_weight = [&](double u) {
    const double g = gamma.eval(u);
    return curvature.eval(u) / (g * g);
  };
  auto slope_weight = [&](double u) {
    const double g = gamma.eval(u);
    const double s = slope.eval(u);
    return s * s / (g * g * g);
  };
  double face_curvature =
      -2.0 * prefactor *
      radial_integral(
          [&](double r) {
            return face_inner(curvature_weight, m, r, gauge_cuts, spec);
          },
          n - 4, m, spec);
  // A convex kink in the gauge is a point mass of curvature at x = b r;
  // it lands in the signed slot with the same -2 prefactor.
  for (double b : gauge_cuts) {
    const double slope_jump = gamma.jump(b, 1);
    if (slope_jump == 0.0) continue;
    const double g = gamma.eval(b);
    face_curvature +=
        -2.0 * prefactor * slope_jump / (g * g) *
        radial_integral([&](double r) { return window(m, b * r); }, n - 4,
                        m * b, spec);
  }
  const double face_slope =
      4.0 * prefactor *
      radial_integral(
          [&](double r) {
            return face_inner(slope_weight, m, r, gauge_cuts, spec);
          },
          n - 4, m, spec);

  return assemble(m, axis.u0, axis.u1 + face_curvature,
                  axis.u2 + face_boundary + face_slope, 2.0 * axis.boundary);
}

double sdt_direct_total(int n, double m, const QuadratureSpec& spec) {
  check_dimension(n);
  check_width(m);
  spec.validate();
  return direct_total_impl(
      n, m, [](double, double r) { return r; }, {}, spec);
}

double sdt_direct_total(const FaceBody& body, double m,
                        const QuadratureSpec& spec) {
  check_dimension(body.n);
  check_width(m);
  spec.validate();
  const PiecewiseProfile& gamma = body.gamma;
  return direct_total_impl(
      body.n, m,
      [&](double x, double r) { return r * gamma.eval(x / r); },
      interior_breakpoints(gamma), spec);
}

double scaling_fit(const std::vector<SdtBreakdown>& results) {
  std::vector<double> widths;
  for (const SdtBreakdown& b : results) {
    if (!std::isfinite(b.m) || b.m <= 0.0)
      throw std::domain_error("scaling fit needs positive finite widths");
    widths.push_back(b.m);
  }
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
  if (widths.size() < 4)
    throw std::domain_error(
        "scaling fit needs at least four distinct widths, got " +
        std::to_string(widths.size()));
  // Three doublings admits the canonical grid {4, 8, 16, 32} while still
  // rejecting clusters too narrow to pin an exponent.
  if (widths.back() < 8.0 * widths.front() * (1.0 - 1e-12))
    throw std::domain_error(
        "scaling fit needs widths spanning at least a factor of eight");

  bool any_negative = false;
  for (const SdtBreakdown& b : results)
    if (b.negative_part() < 0.0) any_negative = true;
  if (!any_negative)
    throw std::domain_error(
        "scaling fit undefined: no negative component over the grid");
  std::vector<double> xs, ys;
  for (const SdtBreakdown& b : results) {
    const double np = b.negative_part();
    if (!(np < 0.0))
      throw std::domain_error(
          "scaling fit undefined: negative part vanishes at m = " +
          format_double(b.m));
    xs.push_back(std::log(b.m));
    ys.push_back(std::log(-np));
  }
  const auto count = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i] / count;
    mean_y += ys[i] / count;
  }
  double cov = 0.0, var = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mean_x) * (ys[i] - mean_y);
    var += (xs[i] - mean_x) * (xs[i] - mean_x);
  }
  return cov / var;
}

}  // namespace ibody
