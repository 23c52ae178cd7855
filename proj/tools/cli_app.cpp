// cli_app.cpp - the ibody command line tool.
//
// Subcommands:
//   transform   sample the section-volume profile of a body, CSV out
//   classify    smoothness measurements and intersection-body verdict
//   lift        raise a generating density through dimensions two at a time
//   plot        SVG cross-section of a body, or graph of a density
//   sdt         pairing breakdown table over a grid of window widths
//   corpus      list builtin bodies / emit one as JSON
//
// Exit codes: 0 success, 2 usage or schema problems, 3 a quadrature result
// missed its accuracy target, 4 domain verdicts (unsupported regime, or a
// construction refuted by its own output, e.g. the generator of a negative
// density).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ibody/classify.hpp"
#include "ibody/corpus.hpp"
#include "ibody/errors.hpp"
#include "ibody/lifting.hpp"
#include "ibody/profile.hpp"
#include "ibody/quadrature.hpp"
#include "ibody/radon.hpp"
#include "ibody/sdt.hpp"
#include "ibody/serialize.hpp"
#include "ibody/svg.hpp"

namespace {

using namespace ibody;

struct Options {
  std::string body;
  int dim = 0;  // 0 = unset; corpus bodies default to 4, sdt to 5
  int grid = 200;
  std::string out;
  std::string svg;
  int steps = 1;
  std::string m_grid = "4,8,16,32,64";
  double tol = 0.0;  // 0 = library default
  int width = 480;
  int samples = 256;
};

QuadratureSpec make_spec(const Options& o) {
  QuadratureSpec spec;
  if (o.tol != 0.0) {
    spec.abs_tol = o.tol;
    spec.rel_tol = o.tol;
  }
  spec.validate();
  return spec;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

bool source_is_file(const std::string& source) {
  std::error_code ec;
  return std::filesystem::is_regular_file(source, ec);
}

/// A body source is either a corpus name or a path to a body JSON file.
/// --dim overrides the dimension in either case (corpus default: 4).
BodyOfRevolution load_body(const Options& o) {
  if (source_is_file(o.body)) {
    nlohmann::json j = read_json_file(o.body);
    if (looks_like_density(j))
      throw schema_error(o.body + " holds a density; this command needs a body");
    BodyOfRevolution body = body_from_json(j);
    if (o.dim > 0 && o.dim != body.n)
      return BodyOfRevolution(o.dim, body.profile);
    return body;
  }
  return corpus_body(o.body, o.dim > 0 ? o.dim : 4);
}

std::string format_brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// transform

int cmd_transform(const Options& o) {
  BodyOfRevolution L = load_body(o);
  if (o.grid < 2) throw std::domain_error("--grid needs at least 2 points");
  std::vector<double> grid;
  if (o.grid != 200)
    for (int i = 1; i <= o.grid; ++i)
      grid.push_back(static_cast<double>(i) / o.grid);
  TransformResult tr = intersection_body(L, make_spec(o), std::move(grid));

  std::string csv = csv_row({"x", "rho"});
  csv += csv_row({csv_cell(0.0), csv_cell(tr.pole)});
  for (size_t i = 0; i < tr.grid.size(); ++i)
    csv += csv_row({csv_cell(tr.grid[i]), csv_cell(tr.values[i])});
  write_output(o.out, csv);

  if (!o.svg.empty())
    write_output(o.svg, body_svg(tr.as_body(), "transform of " + o.body,
                                 o.width, o.samples));
  return 0;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const Options& o) {
  BodyOfRevolution L = load_body(o);
  const int requested = L.n;
  std::string note;
  if (requested % 2 != 0) {
    // The report machinery works at even dimensions.  The smoothness
    // thresholds only rise with dimension, so a failure at the even floor
    // transfers upward; a pass does not certify the odd dimension.
    const int floor_n = requested - 1;
    L = BodyOfRevolution(floor_n, L.profile);
    note = "note: dimension " + std::to_string(requested) +
           " is odd; checks ran at dimension " + std::to_string(floor_n) +
           ". Requirements rise with dimension, so failures carry over to " +
           std::to_string(requested) + "; passes do not.\n";
  }
  ClassificationReport report = full_report(L, o.body);

  std::string text = report.to_text();
  if (!note.empty()) text += note;
  std::fputs(text.c_str(), stdout);

  if (!o.out.empty()) {
    nlohmann::json j = report.to_json();
    if (requested % 2 != 0) {
      j["requested_dimension"] = requested;
      j["note"] = note.substr(0, note.size() - 1);
    }
    write_output(o.out, j.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// lift

GeneratingDensity load_density(const Options& o) {
  if (source_is_file(o.body)) {
    nlohmann::json j = read_json_file(o.body);
    if (looks_like_density(j)) {
      GeneratingDensity d = density_from_json(j);
      if (o.dim > 0 && o.dim != d.n)
        return GeneratingDensity(o.dim, d.F, d.atoms);
      return d;
    }
  }
  return density_of(load_body(o));
}

/// Sign summary of one density: minimum of the continuous part over a fine
/// closed sample of every piece, plus its atom list.
struct DensitySigns {
  double min_value = 0.0;
  bool sign_changing = false;
  bool negative_atom = false;
};

DensitySigns density_signs(const GeneratingDensity& d) {
  DensitySigns s;
  double lo = 0.0, hi = 0.0;
  for (const Piece& piece : d.F.pieces()) {
    for (int k = 0; k <= 400; ++k) {
      const double t = piece.lo + (piece.hi - piece.lo) * k / 400.0;
      const double v = piece.eval(t);
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  s.min_value = lo;
  s.sign_changing = lo < -1e-12 && hi > 1e-12;
  for (const Atom& atom : d.atoms)
    if (atom.weight < 0.0) s.negative_atom = true;
  return s;
}

nlohmann::json step_json(int step, const GeneratingDensity& d) {
  const DensitySigns s = density_signs(d);
  std::vector<std::string> notes;
  if (s.sign_changing)
    notes.push_back("sign-changing continuous part (min " +
                    format_brief(s.min_value) + ")");
  else if (s.min_value < -1e-12)
    notes.push_back("negative continuous part (min " +
                    format_brief(s.min_value) + ")");
  else
    notes.push_back("nonnegative continuous part");
  for (const Atom& atom : d.atoms)
    notes.push_back(std::string(atom.weight < 0.0 ? "negative" : "positive") +
                    " atom at t0=" + format_brief(atom.t0) +
                    " with weight " + format_brief(atom.weight));
  const bool refuted = s.sign_changing || s.negative_atom;

  nlohmann::json j;
  j["step"] = step;
  j["dimension"] = d.n;
  j["density"] = density_to_json(d);
  j["notes"] = notes;
  j["verdict"] = refuted ? "not_intersection_body" : "intersection_body";
  return j;
}

int cmd_lift(const Options& o) {
  if (o.steps < 1) throw std::domain_error("--steps must be at least 1");
  GeneratingDensity current = load_density(o);

  nlohmann::json chain;
  chain["start_dimension"] = current.n;
  chain["requested_steps"] = o.steps;
  chain["steps"] = nlohmann::json::array();
  bool halted = false;

  std::string text;
  for (int k = 1; k <= o.steps; ++k) {
    current = lift(current);
    nlohmann::json step = step_json(k, current);
    text += "step " + std::to_string(k) + ": dimension " +
            std::to_string(current.n) + ", " +
            step["verdict"].get<std::string>();
    for (const auto& note : step["notes"])
      text += "; " + note.get<std::string>();
    text += "\n";
    chain["steps"].push_back(std::move(step));
    // Atoms cannot be lifted further; emit the step that produced them,
    // then stop.
    if (!current.atoms.empty() && k < o.steps) {
      halted = true;
      text += "halted: the density now carries atoms\n";
      break;
    }
  }
  chain["halted_on_atoms"] = halted;

  std::fputs(text.c_str(), stdout);
  if (!o.out.empty()) write_output(o.out, chain.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// plot

int cmd_plot(const Options& o) {
  if (source_is_file(o.body)) {
    nlohmann::json j = read_json_file(o.body);
    if (looks_like_density(j)) {
      write_output(o.out, density_svg(density_from_json(j), o.body, o.width,
                                      o.samples));
      return 0;
    }
  }
  write_output(o.out, body_svg(load_body(o), o.body, o.width, o.samples));
  return 0;
}

// ---------------------------------------------------------------------------
// sdt

std::vector<double> parse_m_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream in(csv);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    size_t used = 0;
    const double v = std::stod(cell, &used);
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
      ++used;
    if (used != cell.size())
      throw std::invalid_argument("bad m value: " + cell);
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("empty --m-grid");
  return grid;
}

int cmd_sdt(const Options& o) {
  const int n = o.dim > 0 ? o.dim : 5;
  std::vector<double> m_grid = parse_m_grid(o.m_grid);

  // The exponent fit needs four distinct widths spanning a factor of eight;
  // check before any quadrature so a malformed grid is a cheap usage error.
  std::vector<double> sorted = m_grid;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() <= 0.0 || !std::isfinite(sorted.back()))
    throw std::domain_error("window widths must be positive and finite");
  if (sorted.size() < 4 ||
      sorted.back() < 8.0 * sorted.front() * (1.0 - 1e-12))
    throw std::domain_error(
        "--m-grid needs at least four distinct widths spanning a factor of "
        "eight, e.g. 4,8,16,32");

  const QuadratureSpec spec = make_spec(o);
  const std::string body = o.body.empty() ? "cylinder" : o.body;
  std::vector<SdtBreakdown> rows;
  for (double m : m_grid) {
    if (body == "cylinder") {
      rows.push_back(sdt_cylinder(n, m, spec));
    } else {
      rows.push_back(sdt_face_body(face_body(body, n), m, spec));
    }
  }
  const double exponent = scaling_fit(rows);

  std::string csv = csv_row({"m", "u0", "u1", "u2", "w", "total"});
  for (const SdtBreakdown& row : rows)
    csv += csv_row({csv_cell(row.m), csv_cell(row.U_terms[0]),
                    csv_cell(row.U_terms[1]), csv_cell(row.U_terms[2]),
                    csv_cell(row.W_term), csv_cell(row.total)});
  csv += csv_row({"fitted_exponent", csv_cell(exponent)});
  write_output(o.out, csv);
  if (!o.out.empty())
    std::printf("fitted exponent = %s\n", format_brief(exponent).c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// corpus

int cmd_corpus_list(const Options& o) {
  std::string text;
  for (const std::string& name : corpus_names()) text += name + "\n";
  write_output(o.out, text);
  return 0;
}

int cmd_corpus_show(const Options& o) {
  BodyOfRevolution body = corpus_body(o.body, o.dim > 0 ? o.dim : 4);
  write_output(o.out, body_to_json(body, o.body).dump(2) + "\n");
  return 0;
}

void add_body_flags(CLI::App* cmd, Options& o, bool required) {
  auto* opt = cmd->add_option("--body", o.body,
                              "corpus name or path to a JSON file");
  if (required) opt->required();
  cmd->add_option("--dim", o.dim, "ambient dimension (corpus default: 4)");
}

}  // namespace

int run_cli(int argc, char** argv) {
  Options o;
  CLI::App app{"intersection bodies of revolution: transforms, verdicts, "
               "figures"};
  app.require_subcommand(1);

  CLI::App* transform =
      app.add_subcommand("transform", "sample the section-volume profile");
  add_body_flags(transform, o, true);
  transform->add_option("--grid", o.grid, "number of uniform sample points");
  transform->add_option("--out", o.out, "CSV output path (default: stdout)");
  transform->add_option("--svg", o.svg, "also write an SVG cross-section");
  transform->add_option("--tol", o.tol, "quadrature tolerance override");

  CLI::App* classify =
      app.add_subcommand("classify", "smoothness and intersection-body "
                         "verdict");
  add_body_flags(classify, o, true);
  classify->add_option("--out", o.out, "JSON report path");

  CLI::App* lift_cmd =
      app.add_subcommand("lift", "raise a generating density two dimensions "
                         "at a time");
  add_body_flags(lift_cmd, o, true);
  lift_cmd->add_option("--steps", o.steps, "number of lifting steps");
  lift_cmd->add_option("--out", o.out, "JSON chain output path");

  CLI::App* plot =
      app.add_subcommand("plot", "SVG cross-section of a body or graph of a "
                         "density");
  add_body_flags(plot, o, true);
  plot->add_option("--out", o.out, "SVG output path (default: stdout)");
  plot->add_option("--width", o.width, "image width in pixels");
  plot->add_option("--samples", o.samples, "boundary samples per quadrant");

  CLI::App* sdt =
      app.add_subcommand("sdt", "pairing breakdown over a window-width grid");
  sdt->add_option("--body", o.body, "cylinder (default) or a face-body name");
  sdt->add_option("--dim", o.dim, "ambient dimension (default: 5)");
  sdt->add_option("--m-grid", o.m_grid,
                  "comma-separated window widths (default: 4,8,16,32,64)");
  sdt->add_option("--out", o.out, "CSV output path (default: stdout)");
  sdt->add_option("--tol", o.tol, "quadrature tolerance override");

  CLI::App* corpus = app.add_subcommand("corpus", "builtin bodies");
  corpus->require_subcommand(1);
  CLI::App* corpus_list = corpus->add_subcommand("list", "print all names");
  corpus_list->add_option("--out", o.out, "output path (default: stdout)");
  CLI::App* corpus_show =
      corpus->add_subcommand("show", "emit one body as JSON");
  add_body_flags(corpus_show, o, true);
  corpus_show->add_option("--out", o.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*transform) return cmd_transform(o);
    if (*classify) return cmd_classify(o);
    if (*lift_cmd) return cmd_lift(o);
    if (*plot) return cmd_plot(o);
    if (*sdt) return cmd_sdt(o);
    if (*corpus_list) return cmd_corpus_list(o);
    if (*corpus_show) return cmd_corpus_show(o);
    return 2;
  } catch (const accuracy_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const unsupported_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const not_star_body_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
