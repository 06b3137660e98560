#include "latspec/json_io.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"

namespace latspec {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON document");
  return j;
}

void expect_keys(const json& obj, const std::set<std::string>& required,
                 const std::set<std::string>& optional,
                 const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!required.count(key) && !optional.count(key))
      throw ParseError(where + ": unknown key \"" + key + "\"");
  for (const std::string& key : required)
    if (!obj.contains(key))
      throw ParseError(where + ": missing key \"" + key + "\"");
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

std::int64_t integer_at(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

std::string string_at(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

Offset offset_at(const json& v, int dimension, const std::string& where) {
  if (!v.is_array() || int(v.size()) != dimension)
    throw ParseError(where + ": offset must be an integer array of length " +
                     std::to_string(dimension));
  Offset z(dimension);
  for (int k = 0; k < dimension; ++k)
    z[k] = integer_at(v[k], where + "[" + std::to_string(k) + "]");
  return z;
}

std::vector<double> vector_at(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number_at(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void emit_offset(std::ostringstream& os, const Offset& z) {
  os << "[";
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (k) os << ",";
    os << z[k];
  }
  os << "]";
}

void emit_vector(std::ostringstream& os, const std::vector<double>& v) {
  os << "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) os << ",";
    os << format_number(v[k]);
  }
  os << "]";
}

std::string quoted(const std::string& s) {
  json j = s;  // reuse nlohmann's string escaping
  return j.dump();
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // collapse -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

PeriodicGraph graph_from_json(const std::string& text) {
  json j = parse(text);
  expect_keys(j, {"dimension", "vertices", "edges", "base_vertex"}, {},
              "graph");
  PeriodicGraph g;
  g.dimension = int(integer_at(j["dimension"], "dimension"));
  if (g.dimension < 0) throw ParseError("dimension: must be nonnegative");

  if (!j["vertices"].is_array() || j["vertices"].empty())
    throw ParseError("vertices: expected a nonempty array");
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const json& v = j["vertices"][i];
    std::string where = "vertices[" + std::to_string(i) + "]";
    expect_keys(v, {"name", "potential"}, {}, where);
    g.vertex_names.push_back(string_at(v["name"], where + ".name"));
    g.potential.push_back(number_at(v["potential"], where + ".potential"));
  }

  if (!j["edges"].is_array()) throw ParseError("edges: expected an array");
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const json& e = j["edges"][i];
    std::string where = "edges[" + std::to_string(i) + "]";
    expect_keys(e, {"tail", "head", "offset", "weight"}, {}, where);
    Edge ed;
    ed.tail = g.index_of(string_at(e["tail"], where + ".tail"));
    ed.head = g.index_of(string_at(e["head"], where + ".head"));
    ed.offset = offset_at(e["offset"], g.dimension, where + ".offset");
    ed.weight = number_at(e["weight"], where + ".weight");
    g.edges.push_back(std::move(ed));
  }

  g.base_vertex = g.index_of(string_at(j["base_vertex"], "base_vertex"));
  return g;
}

std::string graph_to_json(const PeriodicGraph& g) {
  std::ostringstream os;
  os << "{\"dimension\":" << g.dimension << ",\"vertices\":[";
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v) os << ",";
    os << "{\"name\":" << quoted(g.vertex_names[v])
       << ",\"potential\":" << format_number(g.potential[v]) << "}";
  }
  os << "],\"edges\":[";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (e) os << ",";
    const Edge& ed = g.edges[e];
    os << "{\"tail\":" << quoted(g.vertex_names[ed.tail])
       << ",\"head\":" << quoted(g.vertex_names[ed.head]) << ",\"offset\":";
    emit_offset(os, ed.offset);
    os << ",\"weight\":" << format_number(ed.weight) << "}";
  }
  os << "],\"base_vertex\":" << quoted(g.vertex_names[g.base_vertex]) << "}";
  return os.str();
}

std::string eigenfunction_to_json(const MultiplicativeEigenfunction& f) {
  std::ostringstream os;
  os << "{\"alpha\":";
  emit_vector(os, f.alpha);
  os << ",\"lambda\":" << format_number(f.lambda) << ",\"profile\":{";
  for (std::size_t v = 0; v < f.profile.size(); ++v) {
    if (v) os << ",";
    os << quoted(f.graph.vertex_names[v]) << ":" << format_number(f.profile[v]);
  }
  os << "}}";
  return os.str();
}

DiscreteMeasure measure_from_json(const std::string& text) {
  json j = parse(text);
  expect_keys(j, {"lambda", "atoms"}, {"residual"}, "measure");
  DiscreteMeasure m;
  m.lambda = number_at(j["lambda"], "lambda");
  if (!j["atoms"].is_array()) throw ParseError("atoms: expected an array");
  for (std::size_t i = 0; i < j["atoms"].size(); ++i) {
    const json& a = j["atoms"][i];
    std::string where = "atoms[" + std::to_string(i) + "]";
    expect_keys(a, {"alpha", "weight"}, {}, where);
    MeasureAtom atom;
    atom.alpha = vector_at(a["alpha"], where + ".alpha");
    atom.weight = number_at(a["weight"], where + ".weight");
    if (atom.weight < 0.0)
      throw ParseError(where + ".weight: must be nonnegative");
    m.atoms.push_back(std::move(atom));
  }
  return m;
}

std::string measure_to_json(const DiscreteMeasure& m) {
  std::ostringstream os;
  os << "{\"lambda\":" << format_number(m.lambda) << ",\"atoms\":[";
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    if (i) os << ",";
    os << "{\"alpha\":";
    emit_vector(os, m.atoms[i].alpha);
    os << ",\"weight\":" << format_number(m.atoms[i].weight) << "}";
  }
  os << "]}";
  return os.str();
}

WindowFunction window_from_json(const std::string& text,
                                const PeriodicGraph& g) {
  json j = parse(text);
  expect_keys(j, {"box", "values"}, {}, "window");
  expect_keys(j["box"], {"lo", "hi"}, {}, "box");
  Box box;
  box.lo = offset_at(j["box"]["lo"], g.dimension, "box.lo");
  box.hi = offset_at(j["box"]["hi"], g.dimension, "box.hi");
  WindowFunction w = make_window(box, g.vertex_count());
  if (!j["values"].is_array()) throw ParseError("values: expected an array");
  for (std::size_t i = 0; i < j["values"].size(); ++i) {
    const json& cell = j["values"][i];
    std::string where = "values[" + std::to_string(i) + "]";
    expect_keys(cell, {"offset", "vertex", "value"}, {}, where);
    Offset z = offset_at(cell["offset"], g.dimension, where + ".offset");
    int v = g.index_of(string_at(cell["vertex"], where + ".vertex"));
    if (!box.contains(z))
      throw ParseError(where + ": offset outside the declared box");
    w.ref(z, v) = number_at(cell["value"], where + ".value");
  }
  return w;
}

std::string window_to_json(const WindowFunction& w, const PeriodicGraph& g) {
  if (w.vertices != g.vertex_count())
    throw Error("window_to_json: window does not match the graph");
  std::ostringstream os;
  os << "{\"box\":{\"lo\":";
  emit_offset(os, w.box.lo);
  os << ",\"hi\":";
  emit_offset(os, w.box.hi);
  os << "},\"values\":[";
  bool first = true;
  for (std::int64_t c = 0; c < w.box.cell_count(); ++c) {
    Offset z = w.box.offset_at(c);
    for (int v = 0; v < w.vertices; ++v) {
      if (!first) os << ",";
      first = false;
      os << "{\"offset\":";
      emit_offset(os, z);
      os << ",\"vertex\":" << quoted(g.vertex_names[v])
         << ",\"value\":" << format_number(w.at(z, v)) << "}";
    }
  }
  os << "]}";
  return os.str();
}

}  // namespace latspec
