#include "ibody/serialize.hpp"

#include <cstdio>
#include <utility>
#include <vector>

#include "ibody/errors.hpp"
#include "ibody/expr.hpp"

namespace ibody {

namespace {

nlohmann::json piece_to_json(const Piece& piece) {
  nlohmann::json j;
  j["from"] = piece.lo;
  j["to"] = piece.hi;
  if (piece.is_symbolic()) {
    j["expr"] = expr_to_string(piece.expr);
  } else {
    j["cheb"] = piece.cheb->coefficients();
    j["residual"] = piece.cheb->fit_residual();
  }
  return j;
}

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw schema_error(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double require_number(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = require(j, key);
  if (!v.is_number())
    throw schema_error(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

Piece piece_from_json(const nlohmann::json& j) {
  Piece piece;
  piece.lo = require_number(j, "from");
  piece.hi = require_number(j, "to");
  const bool has_expr = j.contains("expr");
  const bool has_cheb = j.contains("cheb");
  if (has_expr == has_cheb)
    throw schema_error("each piece needs exactly one of \"expr\" or \"cheb\"");
  if (has_expr) {
    if (!j.at("expr").is_string())
      throw schema_error("piece \"expr\" must be a formula string");
    piece.expr = parse_expr(j.at("expr").get<std::string>(), "t");
  } else {
    if (!j.at("cheb").is_array())
      throw schema_error("piece \"cheb\" must be a coefficient array");
    std::vector<double> coef;
    for (const nlohmann::json& c : j.at("cheb")) {
      if (!c.is_number())
        throw schema_error("piece \"cheb\" must hold numbers");
      coef.push_back(c.get<double>());
    }
    if (coef.empty()) throw schema_error("piece \"cheb\" must not be empty");
    const double residual =
        j.contains("residual") ? require_number(j, "residual") : 0.0;
    piece.cheb = ChebSeries(piece.lo, piece.hi, std::move(coef), residual);
  }
  return piece;
}

PiecewiseProfile profile_from_pieces(const nlohmann::json& pieces,
                                     bool is_signed) {
  if (!pieces.is_array() || pieces.empty())
    throw schema_error("\"pieces\" must be a non-empty array");
  std::vector<Piece> out;
  for (const nlohmann::json& p : pieces) out.push_back(piece_from_json(p));
  return PiecewiseProfile(std::move(out), is_signed);
}

}  // namespace

nlohmann::json body_to_json(const BodyOfRevolution& body,
                            const std::string& name) {
  nlohmann::json j;
  j["name"] = name;
  j["dimension"] = body.n;
  j["parametrization"] = "t";
  j["pieces"] = nlohmann::json::array();
  for (const Piece& piece : body.profile.pieces())
    j["pieces"].push_back(piece_to_json(piece));
  return j;
}

BodyOfRevolution body_from_json(const nlohmann::json& j) {
  const double dim = require_number(j, "dimension");
  const int n = static_cast<int>(dim);
  if (n != dim) throw schema_error("\"dimension\" must be an integer");
  const nlohmann::json& param = require(j, "parametrization");
  if (!param.is_string())
    throw schema_error("\"parametrization\" must be \"t\" or \"phi\"");
  const std::string kind = param.get<std::string>();
  if (kind == "t")
    return BodyOfRevolution(n, profile_from_pieces(require(j, "pieces"),
                                                   /*is_signed=*/false));
  if (kind == "phi") {
    std::vector<AnglePiece> angle_pieces;
    const nlohmann::json& pieces = require(j, "pieces");
    if (!pieces.is_array() || pieces.empty())
      throw schema_error("\"pieces\" must be a non-empty array");
    for (const nlohmann::json& p : pieces) {
      if (!p.contains("expr"))
        throw schema_error("\"phi\" pieces must carry an \"expr\" formula");
      if (!p.at("expr").is_string())
        throw schema_error("piece \"expr\" must be a formula string");
      angle_pieces.push_back(
          AnglePiece{require_number(p, "from"), require_number(p, "to"),
                     parse_expr(p.at("expr").get<std::string>(), "phi")});
    }
    return BodyOfRevolution(n, from_phi(angle_pieces));
  }
  throw schema_error("\"parametrization\" must be \"t\" or \"phi\", got \"" +
                     kind + "\"");
}

nlohmann::json density_to_json(const GeneratingDensity& density) {
  nlohmann::json j;
  j["dimension"] = density.n;
  j["pieces"] = nlohmann::json::array();
  for (const Piece& piece : density.F.pieces())
    j["pieces"].push_back(piece_to_json(piece));
  j["atoms"] = nlohmann::json::array();
  for (const Atom& atom : density.atoms)
    j["atoms"].push_back({{"t0", atom.t0}, {"weight", atom.weight}});
  return j;
}

GeneratingDensity density_from_json(const nlohmann::json& j) {
  const double dim = require_number(j, "dimension");
  const int n = static_cast<int>(dim);
  if (n != dim) throw schema_error("\"dimension\" must be an integer");
  PiecewiseProfile F =
      profile_from_pieces(require(j, "pieces"), /*is_signed=*/true);
  std::vector<Atom> atoms;
  const nlohmann::json& atom_list = require(j, "atoms");
  if (!atom_list.is_array())
    throw schema_error("\"atoms\" must be an array");
  for (const nlohmann::json& a : atom_list)
    atoms.push_back(Atom{require_number(a, "t0"), require_number(a, "weight")});
  return GeneratingDensity(n, std::move(F), std::move(atoms));
}

bool looks_like_density(const nlohmann::json& j) {
  return j.is_object() && j.contains("atoms");
}

std::string csv_cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_row(std::span<const double> values) {
  std::string row;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) row += ',';
    row += csv_cell(values[i]);
  }
  row += '\n';
  return row;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const std::string& cell : cells) {
    if (!row.empty()) row += ',';
    row += cell;
  }
  row += '\n';
  return row;
}

}  // namespace ibody
