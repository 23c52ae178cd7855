#include "ibody/corpus.hpp"

#include <numbers>

#include "ibody/errors.hpp"
#include "ibody/expr.hpp"

namespace ibody {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

AnglePiece angle_piece(double lo, double hi, const char* formula) {
  return {lo, hi, parse_expr(formula, "phi")};
}

PiecewiseProfile one_piece(const char* formula) {
  return from_phi({angle_piece(0.0, kHalfPi, formula)});
}

PiecewiseProfile two_pieces(const char* near_axis, const char* near_equator) {
  return from_phi({angle_piece(0.0, kQuarterPi, near_axis),
                   angle_piece(kQuarterPi, kHalfPi, near_equator)});
}

PiecewiseProfile profile_for(std::string_view name) {
  // Angle formulas, measured from the axis of revolution.  Seams sit at
  // pi/4 (t = 1/sqrt(2)) for every two-piece entry.
  if (name == "ball") return one_piece("1");
  if (name == "cylinder") return two_pieces("1/cos(phi)", "1/sin(phi)");
  if (name == "double_cone") return one_piece("1/(cos(phi) + sin(phi))");
  if (name == "cylinder_capped")
    return two_pieces("2/(cos(phi) + sin(phi))", "1/sin(phi)");
  if (name == "diabolo_L")
    return two_pieces("(2*cos(phi) + sin(phi))/(5*cos(phi)^2 - 1)",
                      "1/sin(phi)");
  if (name == "smooth_Ltilde")
    return one_piece("(2 - 6*cos(phi)^2 + 5*cos(phi)^4)^(1/3)");
  if (name == "barrel_B") return two_pieces("1/cos(phi)", "2*sin(phi)");
  if (name == "barrel_gen4")
    return two_pieces("(3*cos(phi)/pi)^(1/3)", "(3/(4*pi))^(1/3)/sin(phi)");
  // Continuous part of the dimension-8 barrel density, as a radial profile
  // (the seventh root of the density branches); the Dirac part belongs to
  // the lifting machinery, not to any star body.  This profile genuinely
  // jumps at t = 1/sqrt(2).
  if (name == "barrel_L8")
    return two_pieces("(96*cos(phi)/15)^(1/7)", "1/sin(phi)");
  throw lookup_error("unknown corpus body \"" + std::string(name) + "\"");
}

}  // namespace

BodyOfRevolution corpus_body(std::string_view name, int n) {
  return BodyOfRevolution(n, profile_for(name));
}

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "ball",       "cylinder",      "double_cone",
      "cylinder_capped", "diabolo_L", "smooth_Ltilde",
      "barrel_B",   "barrel_gen4",   "barrel_L8",
  };
  return names;
}

}  // namespace ibody
