// latspec command-line front end: every subcommand reads one graph document,
// prints a single JSON payload (CSV for `levelset --format csv`) on stdout and
// keeps diagnostics on stderr.
//
// Exit codes: 0 success, 1 validation failure, 2 convergence/overflow
// failure, 3 usage or input-domain error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latspec/choquet.hpp"
#include "latspec/dispersion.hpp"
#include "latspec/eigenfunction.hpp"
#include "latspec/graph.hpp"
#include "latspec/json_io.hpp"
#include "latspec/levelset.hpp"
#include "latspec/quotient.hpp"

namespace {

using namespace latspec;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<double> parse_alpha(const std::string& text, int d) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("--alpha: cannot parse component '" + item + "'");
    }
  }
  if (int(out.size()) != d)
    throw ParseError("--alpha: expected " + std::to_string(d) +
                     " components, got " + std::to_string(out.size()));
  return out;
}

IntMatrix parse_sublattice(const std::string& text, int d) {
  std::vector<std::vector<std::int64_t>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<std::int64_t> r;
    std::stringstream rs(row);
    std::string item;
    while (std::getline(rs, item, ',')) {
      try {
        std::size_t pos = 0;
        r.push_back(std::stoll(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ParseError("--sublattice: cannot parse entry '" + item + "'");
      }
    }
    if (int(r.size()) != d)
      throw ParseError("--sublattice: row '" + row + "' has " +
                       std::to_string(r.size()) + " entries, expected " +
                       std::to_string(d));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError("--sublattice: no rows given");
  IntMatrix m(int(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < d; ++j) m.at(int(i), j) = rows[i][j];
  return m;
}

Site parse_site(const std::string& text, const PeriodicGraph& g,
                const std::string& flag) {
  std::string offsets, name;
  auto colon = text.rfind(':');
  if (colon == std::string::npos) {
    if (g.dimension != 0)
      throw ParseError(flag + ": expected \"z1,...,zd:vertex\"");
    name = text;
  } else {
    offsets = text.substr(0, colon);
    name = text.substr(colon + 1);
  }
  Site s;
  s.vertex = g.index_of(name);
  if (g.dimension > 0) {
    std::stringstream ss(offsets);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        s.offset.push_back(std::stoll(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ParseError(flag + ": cannot parse offset '" + item + "'");
      }
    }
  }
  if (int(s.offset.size()) != g.dimension)
    throw ParseError(flag + ": offset needs " + std::to_string(g.dimension) +
                     " components");
  return s;
}

void emit_vector(std::ostringstream& os, const std::vector<double>& v) {
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << format_number(v[i]);
  }
  os << "]";
}

void emit_site(std::ostringstream& os, const PeriodicGraph& g, const Site& s) {
  os << "{\"offset\":[";
  for (std::size_t i = 0; i < s.offset.size(); ++i) {
    if (i) os << ",";
    os << s.offset[i];
  }
  os << "],\"vertex\":\"" << g.vertex_names[s.vertex] << "\"}";
}

PeriodicGraph load_validated(const std::string& path) {
  PeriodicGraph g = graph_from_json(read_file(path));
  ValidationReport report = validate(g);
  if (!report.ok()) {
    for (const Violation& v : report.violations)
      std::cerr << "invalid graph [" << v.code << "] " << v.where << ": "
                << v.message << "\n";
    std::exit(1);
  }
  return g;
}

std::string violations_json(const ValidationReport& report) {
  std::ostringstream os;
  os << "{\"valid\":" << (report.ok() ? "true" : "false")
     << ",\"violations\":[";
  for (std::size_t i = 0; i < report.violations.size(); ++i) {
    if (i) os << ",";
    const Violation& v = report.violations[i];
    os << "{\"code\":\"" << v.code << "\",\"where\":\"" << v.where
       << "\",\"message\":\"" << v.message << "\"}";
  }
  os << "]}";
  return os.str();
}

PeriodicGraph symmetrized(const PeriodicGraph& g) {
  PeriodicGraph out = g;
  auto has = [&](int tail, int head, const Offset& off) {
    for (const Edge& ed : out.edges)
      if (ed.tail == tail && ed.head == head && ed.offset == off) return true;
    return false;
  };
  std::size_t original = g.edges.size();
  for (std::size_t e = 0; e < original; ++e) {
    const Edge ed = out.edges[e];
    Offset rev(ed.offset.size());
    for (std::size_t k = 0; k < rev.size(); ++k) rev[k] = -ed.offset[k];
    if (!has(ed.head, ed.tail, rev))
      out.edges.push_back({ed.head, ed.tail, rev, ed.weight});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for Z^d-periodic weighted graphs"};
  app.require_subcommand(1);

  std::string graph_path;
  double tol = 1e-12;
  double grad_tol = 1e-9;
  long max_iter = 500;
  std::string alpha_text;
  double lambda_flag = 0.0;
  int dirs = 64;
  double trace_tol = 1e-9;
  std::string format = "json";
  std::string sublattice_text;
  std::string from_text, to_text;
  std::int64_t inflate = 2;
  std::string measure_path, samples_path;
  int grid = 32;
  std::optional<std::int64_t> window_radius;
  bool symmetrize = false;

  auto add_graph_arg = [&](CLI::App* cmd) {
    cmd->add_option("graph", graph_path, "graph JSON file")->required();
  };

  CLI::App* c_validate = app.add_subcommand("validate", "check all invariants");
  c_validate->add_flag("--symmetrize", symmetrize,
                       "add missing reverse edges and print the graph");
  add_graph_arg(c_validate);

  CLI::App* c_lambda = app.add_subcommand("lambda", "dispersion value at alpha");
  c_lambda->add_option("--alpha", alpha_text, "a1,...,ad")->required();
  c_lambda->add_option("--tol", tol, "Perron enclosure tolerance");
  add_graph_arg(c_lambda);

  CLI::App* c_lambda0 = app.add_subcommand("lambda0", "spectral bottom sup Lambda");
  c_lambda0->add_option("--grad-tol", grad_tol, "stationarity tolerance");
  c_lambda0->add_option("--max-iter", max_iter, "ascent iteration budget");
  add_graph_arg(c_lambda0);

  CLI::App* c_eigen = app.add_subcommand("eigenfunction",
                                         "multiplicative eigenfunction at alpha");
  c_eigen->add_option("--alpha", alpha_text, "a1,...,ad")->required();
  c_eigen->add_option("--tol", tol, "Perron enclosure tolerance");
  add_graph_arg(c_eigen);

  CLI::App* c_level = app.add_subcommand("levelset", "trace {Lambda = lambda}");
  c_level->add_option("--lambda", lambda_flag, "level")->required();
  c_level->add_option("--dirs", dirs, "number of directions");
  c_level->add_option("--tol", trace_tol, "trace tolerance");
  c_level->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_graph_arg(c_level);

  CLI::App* c_quot = app.add_subcommand("quotient", "factor by a sublattice");
  c_quot->add_option("--sublattice", sublattice_text,
                     "rows like \"3\" or \"1,0;0,2\"")
      ->required();
  add_graph_arg(c_quot);

  CLI::App* c_harnack = app.add_subcommand("harnack", "path-product bound");
  c_harnack->add_option("--from", from_text, "site \"z1,...,zd:vertex\"")
      ->required();
  c_harnack->add_option("--to", to_text, "site \"z1,...,zd:vertex\"")
      ->required();
  c_harnack->add_option("--lambda", lambda_flag, "spectral parameter");
  c_harnack->add_option("--inflate", inflate, "search-box inflation per axis");
  add_graph_arg(c_harnack);

  CLI::App* c_synth = app.add_subcommand("synthesize",
                                         "window function from a measure");
  c_synth->add_option("--measure", measure_path, "measure JSON file")
      ->required();
  std::int64_t window_flag = 0;
  c_synth->add_option("--window", window_flag,
                      "symmetric window radius per axis");
  add_graph_arg(c_synth);

  CLI::App* c_decomp = app.add_subcommand("decompose",
                                          "fit an atomic measure to samples");
  c_decomp->add_option("--lambda", lambda_flag, "level")->required();
  c_decomp->add_option("--samples", samples_path, "window JSON file")
      ->required();
  c_decomp->add_option("--grid", grid, "level-set directions for the dictionary");
  c_decomp->add_option("--tol", trace_tol, "trace tolerance");
  add_graph_arg(c_decomp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 3;
  }

  try {
    if (c_validate->parsed()) {
      PeriodicGraph g = graph_from_json(read_file(graph_path));
      if (symmetrize) {
        std::cout << graph_to_json(symmetrized(g)) << "\n";
        return 0;
      }
      ValidationReport report = validate(g);
      std::cout << violations_json(report) << "\n";
      return report.ok() ? 0 : 1;
    }

    if (c_lambda->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      DispersionPoint p = lambda_at(g, parse_alpha(alpha_text, g.dimension), tol);
      std::ostringstream os;
      os << "{\"alpha\":";
      emit_vector(os, p.alpha);
      os << ",\"theta\":" << format_number(p.theta)
         << ",\"lambda\":" << format_number(p.lambda) << ",\"gradient\":";
      emit_vector(os, p.gradient);
      os << "}";
      std::cout << os.str() << "\n";
      return 0;
    }

    if (c_lambda0->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      Lambda0Result r = find_lambda0(g, grad_tol, max_iter);
      std::ostringstream os;
      os << "{\"lambda0\":" << format_number(r.lambda0) << ",\"alpha_star\":";
      emit_vector(os, r.alpha_star);
      os << ",\"gradient_norm\":" << format_number(r.gradient_norm)
         << ",\"iterations\":" << r.iterations << "}";
      std::cout << os.str() << "\n";
      return 0;
    }

    if (c_eigen->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      MultiplicativeEigenfunction f =
          build_eigenfunction(g, parse_alpha(alpha_text, g.dimension), tol);
      std::cout << eigenfunction_to_json(f) << "\n";
      return 0;
    }

    if (c_level->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      LevelSet set = trace_level_set(g, lambda_flag, dirs, trace_tol);
      if (format == "csv") {
        std::cout << level_set_csv(set);
        return 0;
      }
      std::ostringstream os;
      os << "{\"lambda\":" << format_number(set.lambda) << ",\"center\":";
      emit_vector(os, set.center);
      os << ",\"points\":[";
      for (std::size_t i = 0; i < set.points.size(); ++i) {
        if (i) os << ",";
        emit_vector(os, set.points[i]);
      }
      os << "],\"directions\":[";
      for (std::size_t i = 0; i < set.directions.size(); ++i) {
        if (i) os << ",";
        emit_vector(os, set.directions[i]);
      }
      os << "],\"radii\":";
      emit_vector(os, set.radii);
      os << "}";
      std::cout << os.str() << "\n";
      return 0;
    }

    if (c_quot->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      Sublattice L{parse_sublattice(sublattice_text, g.dimension)};
      QuotientGraph q = (L.basis.rows == g.dimension)
                            ? factor_full_rank(g, L)
                            : factor_primitive(g, L);
      std::cout << graph_to_json(q.graph) << "\n";
      return 0;
    }

    if (c_harnack->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      Site from = parse_site(from_text, g, "--from");
      Site to = parse_site(to_text, g, "--to");
      HarnackBound hb = harnack_bound(g, from, to, lambda_flag,
                                      default_harnack_box(g, from, to, inflate));
      std::ostringstream os;
      os << "{\"from\":";
      emit_site(os, g, hb.from);
      os << ",\"to\":";
      emit_site(os, g, hb.to);
      os << ",\"lambda\":" << format_number(hb.lambda)
         << ",\"constant\":" << format_number(hb.constant) << ",\"path\":[";
      for (std::size_t i = 0; i < hb.witness_path.size(); ++i) {
        if (i) os << ",";
        emit_site(os, g, hb.witness_path[i]);
      }
      os << "]}";
      std::cout << os.str() << "\n";
      return 0;
    }

    if (c_synth->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      DiscreteMeasure m = measure_from_json(read_file(measure_path));
      if (m.atoms.empty())
        std::cerr << "warning: empty measure, synthesizing the zero function\n";
      Box window;
      if (c_synth->count("--window")) {
        window.lo.assign(g.dimension, -window_flag);
        window.hi.assign(g.dimension, window_flag);
      } else {
        window = default_synthesis_window(m, g.dimension);
      }
      WindowFunction f = synthesize(g, m, window);
      std::cout << window_to_json(f, g) << "\n";
      return 0;
    }

    if (c_decomp->parsed()) {
      PeriodicGraph g = load_validated(graph_path);
      WindowFunction samples = window_from_json(read_file(samples_path), g);
      DecomposeResult r = decompose(g, lambda_flag, samples, grid, trace_tol);
      std::string base = measure_to_json(r.measure);
      base.pop_back();  // strip the closing brace, append the residual
      std::cout << base << ",\"residual\":" << format_number(r.residual)
                << "}\n";
      return 0;
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IrreducibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // domain/input errors: NoSolution, EmptySet, TorsionError, RankError,
    // KeyError, ParseError, window errors
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
