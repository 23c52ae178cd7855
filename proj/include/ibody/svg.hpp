// svg.hpp - deterministic SVG 1.1 figures: axial cross-sections of bodies
// of revolution and graphs of generating densities.
#pragma once

#include <string>

#include "ibody/profile.hpp"
#include "ibody/radon.hpp"

namespace ibody {

/// Cross-section through the axis of revolution, drawn horizontally; the
/// boundary arc (rho cos phi, rho sin phi), phi in [0, pi/2], is completed
/// over all four quadrants by symmetry.  Profile seams are sampled on both
/// sides so corners and jumps render sharply.  Output is byte-identical
/// for identical inputs; `samples` is the arc count per quadrant.
std::string body_svg(const BodyOfRevolution& body, const std::string& title,
                     int width = 480, int samples = 256);

/// Graph of the density's continuous part over t in [0, 1], one polyline
/// per piece so jumps stay open; each atom appears as a labeled vertical
/// spike at its location, upward for positive weight.
std::string density_svg(const GeneratingDensity& density,
                        const std::string& title, int width = 480,
                        int samples = 256);

}  // namespace ibody
