// serialize.hpp - JSON schemas for bodies and generating densities, plus
// fixed-precision CSV cells: the file formats the CLI reads and writes.
#pragma once

#include <initializer_list>
#include <span>
#include <string>

#include <json.hpp>

#include "ibody/profile.hpp"
#include "ibody/radon.hpp"

namespace ibody {

/// Body schema: {name, dimension, parametrization: "t"|"phi", pieces:
/// [{from, to, expr}]}.  "t" pieces hold formulas in t = cos(angle) over
/// [0, 1]; "phi" pieces hold formulas in the angle itself over [0, pi/2]
/// (radians) and are converted on load.  Fitted pieces serialize as
/// {from, to, cheb: [coefficients], residual} and only appear in "t"
/// parametrization.  The writer always emits "t".
nlohmann::json body_to_json(const BodyOfRevolution& body,
                            const std::string& name);

/// Throws schema_error on missing keys, bad types or bad formulas; the
/// body constructor's own validation (dimension, positivity) applies too.
/// A missing name defaults to "body".
BodyOfRevolution body_from_json(const nlohmann::json& j);

/// Density schema: {dimension, pieces, atoms: [{t0, weight}]}.  Pieces as
/// in the body schema, always t-parametrized, values may be signed; the
/// atoms key is always present, so it discriminates the two schemas.
nlohmann::json density_to_json(const GeneratingDensity& density);
GeneratingDensity density_from_json(const nlohmann::json& j);

/// True when the JSON carries the density schema rather than the body one.
bool looks_like_density(const nlohmann::json& j);

/// One CSV cell at 17 significant digits; round-trips doubles exactly.
std::string csv_cell(double v);

/// Comma-joined cells with a trailing newline.
std::string csv_row(std::span<const double> values);

/// Same, from preformatted cells (headers, mixed rows).
std::string csv_row(std::initializer_list<std::string> cells);

}  // namespace ibody
