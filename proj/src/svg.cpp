#include "ibody/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "ibody/errors.hpp"

namespace ibody {

namespace {

constexpr const char* kHeader =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<!-- ibody 1.0 -->\n";

// Fixed two-decimal pixel coordinates keep the output byte-deterministic.
std::string px(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string open_svg(int width, int height, const std::string& title) {
  std::string out = kHeader;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  out += "<title>" + escape_xml(title) + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"8\" y=\"16\" font-family=\"monospace\" font-size=\"12\" "
         "fill=\"#333333\">" +
         escape_xml(title) + "</text>\n";
  return out;
}

struct ArcPoint {
  double x = 0.0;  // rho cos(phi): along the axis of revolution
  double y = 0.0;  // rho sin(phi): distance from the axis
};

// Quarter outline in ascending phi, with both one-sided values at every
// interior seam of the profile.
std::vector<ArcPoint> quarter_arc(const PiecewiseProfile& profile,
                                  int samples) {
  const double half_pi = std::numbers::pi / 2.0;
  std::vector<ArcPoint> arc;
  std::vector<double> seam_angles;
  for (double b : profile.breakpoints())
    if (b > 0.0 && b < 1.0) seam_angles.push_back(std::acos(b));
  std::sort(seam_angles.begin(), seam_angles.end());

  size_t next_seam = 0;
  for (int k = 0; k <= samples; ++k) {
    const double phi = half_pi * k / samples;
    while (next_seam < seam_angles.size() && seam_angles[next_seam] <= phi) {
      const double sphi = seam_angles[next_seam];
      const double t0 = std::cos(sphi);
      // Approaching the seam in phi from below means t above t0.
      for (Side side : {Side::Right, Side::Left}) {
        const double rho = profile.eval(t0, side);
        arc.push_back({rho * std::cos(sphi), rho * std::sin(sphi)});
      }
      ++next_seam;
    }
    const double rho = profile.eval(std::cos(phi));
    arc.push_back({rho * std::cos(phi), rho * std::sin(phi)});
  }
  return arc;
}

}  // namespace

std::string body_svg(const BodyOfRevolution& body, const std::string& title,
                     int width, int samples) {
  if (width < 64 || samples < 8)
    throw std::domain_error("svg needs width >= 64 and samples >= 8");
  const int height = width * 3 / 4;
  const double cx = width / 2.0;
  const double cy = height / 2.0;
  const double margin = 24.0;

  const std::vector<ArcPoint> arc = quarter_arc(body.profile, samples);
  double extent = 0.0;
  for (const ArcPoint& p : arc)
    extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  const double scale = (std::min(cx, cy) - margin) / extent;

  std::string out = open_svg(width, height, title);
  out += "<line x1=\"0\" y1=\"" + px(cy) + "\" x2=\"" + std::to_string(width) +
         "\" y2=\"" + px(cy) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + px(cx) + "\" y1=\"0\" x2=\"" + px(cx) + "\" y2=\"" +
         std::to_string(height) +
         "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

  // The four quadrants, traversed so the outline closes without pen lifts:
  // (x, y) ascending phi, (-x, y) descending, (-x, -y) ascending, (x, -y)
  // descending.
  std::string points;
  auto emit = [&](double sx, double sy, bool forward) {
    const auto add = [&](const ArcPoint& p) {
      if (!points.empty()) points += ' ';
      points += px(cx + scale * sx * p.x) + "," + px(cy - scale * sy * p.y);
    };
    if (forward)
      for (size_t i = 0; i < arc.size(); ++i) add(arc[i]);
    else
      for (size_t i = arc.size(); i-- > 0;) add(arc[i]);
  };
  emit(1.0, 1.0, true);
  emit(-1.0, 1.0, false);
  emit(-1.0, -1.0, true);
  emit(1.0, -1.0, false);
  out += "<polygon points=\"" + points +
         "\" fill=\"none\" stroke=\"#1a5fb4\" stroke-width=\"2\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string density_svg(const GeneratingDensity& density,
                        const std::string& title, int width, int samples) {
  if (width < 64 || samples < 8)
    throw std::domain_error("svg needs width >= 64 and samples >= 8");
  const int height = width * 3 / 4;
  const double left = 48.0, right = width - 16.0;
  const double top = 28.0, bottom = height - 24.0;

  // Sample every piece on a closed grid; jumps stay between polylines.
  std::vector<std::vector<ArcPoint>> lines;
  double f_lo = 0.0, f_hi = 0.0;
  for (const Piece& piece : density.F.pieces()) {
    std::vector<ArcPoint> line;
    for (int k = 0; k <= samples; ++k) {
      const double t = piece.lo + (piece.hi - piece.lo) * k / samples;
      const double v = piece.eval(t);
      if (!std::isfinite(v)) continue;
      f_lo = std::min(f_lo, v);
      f_hi = std::max(f_hi, v);
      line.push_back({t, v});
    }
    lines.push_back(std::move(line));
  }
  if (f_hi == f_lo) f_hi = f_lo + 1.0;
  const double pad = 0.1 * (f_hi - f_lo);
  f_lo -= pad;
  f_hi += pad;

  const auto X = [&](double t) { return left + (right - left) * t; };
  const auto Y = [&](double v) {
    return bottom - (bottom - top) * (v - f_lo) / (f_hi - f_lo);
  };

  std::string out = open_svg(width, height, title);
  // Frame, zero line and range labels.
  out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" +
         px(right - left) + "\" height=\"" + px(bottom - top) +
         "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + px(left) + "\" y1=\"" + px(Y(0.0)) + "\" x2=\"" +
         px(right) + "\" y2=\"" + px(Y(0.0)) +
         "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  for (double v : {f_lo + pad, f_hi - pad}) {
    out += "<text x=\"4\" y=\"" + px(Y(v) + 4.0) +
           "\" font-family=\"monospace\" font-size=\"10\" fill=\"#666666\">" +
           label_number(v) + "</text>\n";
  }
  out += "<text x=\"" + px(left) + "\" y=\"" + px(bottom + 14.0) +
         "\" font-family=\"monospace\" font-size=\"10\" "
         "fill=\"#666666\">t=0</text>\n";
  out += "<text x=\"" + px(right - 24.0) + "\" y=\"" + px(bottom + 14.0) +
         "\" font-family=\"monospace\" font-size=\"10\" "
         "fill=\"#666666\">t=1</text>\n";

  for (const std::vector<ArcPoint>& line : lines) {
    if (line.size() < 2) continue;
    std::string points;
    for (const ArcPoint& p : line) {
      if (!points.empty()) points += ' ';
      points += px(X(p.x)) + "," + px(Y(p.y));
    }
    out += "<polyline points=\"" + points +
           "\" fill=\"none\" stroke=\"#1a5fb4\" stroke-width=\"2\"/>\n";
  }

  // Atoms: fixed-length spikes from the zero line, signed by weight.
  const double spike = 0.35 * (bottom - top);
  for (const Atom& atom : density.atoms) {
    const double x = X(atom.t0);
    const double y0 = Y(0.0);
    const double y1 = atom.weight >= 0.0 ? y0 - spike : y0 + spike;
    out += "<line x1=\"" + px(x) + "\" y1=\"" + px(y0) + "\" x2=\"" + px(x) +
           "\" y2=\"" + px(y1) +
           "\" stroke=\"#c01c28\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + px(x + 4.0) + "\" y=\"" +
           px(y1 + (atom.weight >= 0.0 ? -4.0 : 12.0)) +
           "\" font-family=\"monospace\" font-size=\"10\" fill=\"#c01c28\">" +
           "t0=" + label_number(atom.t0) + " w=" + label_number(atom.weight) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace ibody
