#include "latspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "latspec/int_matrix.hpp"

namespace latspec {

namespace {

std::string offset_str(const Offset& z) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) os << ",";
    os << z[i];
  }
  os << ")";
  return os.str();
}

std::string site_str(const PeriodicGraph& g, const Site& s) {
  std::string v = (s.vertex >= 0 && s.vertex < g.vertex_count())
                      ? g.vertex_names[s.vertex]
                      : "#" + std::to_string(s.vertex);
  return offset_str(s.offset) + v;
}

Offset negated(const Offset& z) {
  Offset r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) r[i] = checked_sub(0, z[i]);
  return r;
}

Offset added(const Offset& a, const Offset& b) {
  Offset r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

}  // namespace

int PeriodicGraph::index_of(std::string_view name) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (vertex_names[i] == name) return i;
  throw KeyError("unknown vertex '" + std::string(name) + "'");
}

ValidationReport validate(const PeriodicGraph& g) {
  ValidationReport report;
  auto add = [&](std::string code, std::string where, std::string message) {
    report.violations.push_back(
        {std::move(code), std::move(where), std::move(message)});
  };

  if (g.dimension < 0)
    add("dimension", "graph", "dimension must be nonnegative");
  if (g.vertex_names.empty()) {
    add("vertices", "graph", "vertex list is empty");
    return report;
  }
  if (g.potential.size() != g.vertex_names.size())
    add("potential", "graph", "potential size does not match vertex count");
  {
    std::set<std::string> seen;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.vertex_names[v].empty())
        add("vertex_name", "vertex " + std::to_string(v),
            "empty vertex name");
      if (!seen.insert(g.vertex_names[v]).second)
        add("vertex_name", g.vertex_names[v], "duplicate vertex name");
    }
  }
  if (g.base_vertex < 0 || g.base_vertex >= g.vertex_count())
    add("base_vertex", "graph", "base vertex out of range");
  for (std::size_t i = 0; i < g.potential.size(); ++i)
    if (!std::isfinite(g.potential[i]))
      add("potential", g.vertex_names[i], "potential is not finite");

  bool shapes_ok = true;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    std::string where = "edge " + std::to_string(e);
    if (ed.tail < 0 || ed.tail >= g.vertex_count() || ed.head < 0 ||
        ed.head >= g.vertex_count()) {
      add("edge_vertex", where, "edge endpoint out of range");
      shapes_ok = false;
      continue;
    }
    if (int(ed.offset.size()) != g.dimension) {
      add("offset_length", where,
          "offset has length " + std::to_string(ed.offset.size()) +
              ", expected " + std::to_string(g.dimension));
      shapes_ok = false;
    }
    if (!(ed.weight > 0.0) || !std::isfinite(ed.weight))
      add("weight_positive", where, "edge weight must be positive and finite");
  }
  if (!shapes_ok) return report;

  {
    std::set<std::tuple<int, int, Offset>> keys;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const Edge& ed = g.edges[e];
      if (!keys.insert({ed.tail, ed.head, ed.offset}).second)
        add("edge_duplicate", "edge " + std::to_string(e),
            "duplicate edge key (tail, head, offset)");
    }
    for (const Edge& ed : g.edges) {
      if (!keys.count({ed.head, ed.tail, negated(ed.offset)}))
        add("support_symmetry",
            g.vertex_names[ed.tail] + "->" + g.vertex_names[ed.head] +
                offset_str(ed.offset),
            "reverse edge missing");
    }
  }

  // quotient connectedness over V, ignoring offsets
  {
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (const Edge& ed : g.edges) {
      adj[ed.tail].push_back(ed.head);
      adj[ed.head].push_back(ed.tail);
    }
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!seen[v])
        add("quotient_connected", g.vertex_names[v],
            "vertex not reachable in the quotient multigraph");
    if (!report.ok()) return report;
  }

  // cycle-offset lattice: spanning-tree potentials, then one generator per
  // edge (tree edges contribute zero)
  if (g.dimension >= 0) {
    std::vector<Offset> pot(g.vertex_count(), Offset(g.dimension, 0));
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& ed : g.edges) {
        if (ed.tail == v && !seen[ed.head]) {
          pot[ed.head] = added(pot[v], ed.offset);
          seen[ed.head] = 1;
          q.push(ed.head);
        } else if (ed.head == v && !seen[ed.tail]) {
          pot[ed.tail] = added(pot[v], negated(ed.offset));
          seen[ed.tail] = 1;
          q.push(ed.tail);
        }
      }
    }
    IntMatrix gens(int(g.edges.size()), g.dimension);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const Edge& ed = g.edges[e];
      for (int k = 0; k < g.dimension; ++k)
        gens.at(int(e), k) = checked_sub(
            checked_add(ed.offset[k], pot[ed.tail][k]), pot[ed.head][k]);
    }
    if (!lattice_spans_zd(gens, g.dimension))
      add("cycle_lattice", "graph",
          "cycle offsets generate a proper sublattice of Z^d");
  }

  return report;
}

double degree(const PeriodicGraph& g, int vertex) {
  if (vertex < 0 || vertex >= g.vertex_count())
    throw KeyError("degree: vertex index out of range");
  double s = 0.0;
  for (const Edge& ed : g.edges)
    if (ed.tail == vertex) s += ed.weight;
  return s + g.potential[vertex];
}

double degree(const PeriodicGraph& g, std::string_view vertex) {
  return degree(g, g.index_of(vertex));
}

double max_degree(const PeriodicGraph& g) {
  double m = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < g.vertex_count(); ++v) m = std::max(m, degree(g, v));
  return m;
}

bool Box::contains(const Offset& z) const {
  if (z.size() != lo.size()) return false;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < lo[i] || z[i] > hi[i]) return false;
  return true;
}

std::int64_t Box::cell_count() const {
  std::int64_t n = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return 0;
    n = checked_mul(n, hi[i] - lo[i] + 1);
  }
  return n;
}

std::int64_t Box::index_of(const Offset& z) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < lo.size(); ++i)
    idx = idx * (hi[i] - lo[i] + 1) + (z[i] - lo[i]);
  return idx;
}

Offset Box::offset_at(std::int64_t index) const {
  Offset z(lo.size());
  for (int i = int(lo.size()) - 1; i >= 0; --i) {
    std::int64_t w = hi[i] - lo[i] + 1;
    z[i] = lo[i] + index % w;
    index /= w;
  }
  return z;
}

double WindowFunction::at(const Offset& z, int v) const {
  if (v < 0 || v >= vertices)
    throw KeyError("window: vertex index out of range");
  if (!box.contains(z))
    throw WindowTooSmall("window: offset " + offset_str(z) + " outside box");
  return values[std::size_t(box.index_of(z)) * vertices + v];
}

double& WindowFunction::ref(const Offset& z, int v) {
  if (v < 0 || v >= vertices)
    throw KeyError("window: vertex index out of range");
  if (!box.contains(z))
    throw WindowTooSmall("window: offset " + offset_str(z) + " outside box");
  return values[std::size_t(box.index_of(z)) * vertices + v];
}

WindowFunction make_window(const Box& box, int n_vertices) {
  if (box.lo.size() != box.hi.size())
    throw Error("make_window: malformed box");
  if (box.cell_count() <= 0) throw Error("make_window: empty box");
  WindowFunction f;
  f.box = box;
  f.vertices = n_vertices;
  f.values.assign(std::size_t(box.cell_count()) * n_vertices, 0.0);
  return f;
}

WindowFunction shift(const WindowFunction& f, const Offset& z) {
  if (z.size() != f.box.lo.size())
    throw Error("shift: offset has wrong dimension");
  WindowFunction out = f;
  out.box.lo = added(f.box.lo, z);
  out.box.hi = added(f.box.hi, z);
  return out;
}

double apply_operator(const PeriodicGraph& g, const WindowFunction& f,
                      const Site& at, double lambda) {
  if (at.vertex < 0 || at.vertex >= g.vertex_count())
    throw KeyError("apply_operator: vertex index out of range");
  if (f.vertices != g.vertex_count())
    throw Error("apply_operator: window vertex count does not match graph");
  if (!f.box.contains(at.offset))
    throw WindowTooSmall("apply_operator: site " + site_str(g, at) +
                         " outside window");
  double here = f.at(at.offset, at.vertex);
  double acc = 0.0;
  for (const Edge& ed : g.edges) {
    if (ed.tail != at.vertex) continue;
    Offset nb = added(at.offset, ed.offset);
    if (!f.box.contains(nb))
      throw WindowTooSmall("apply_operator: neighbour " +
                           site_str(g, {nb, ed.head}) + " outside window");
    acc += ed.weight * (here - f.at(nb, ed.head));
  }
  acc += (g.potential[at.vertex] - lambda) * here;
  return acc;
}

Box default_harnack_box(const PeriodicGraph& g, const Site& from,
                        const Site& to, std::int64_t inflate) {
  Box box;
  box.lo.resize(g.dimension);
  box.hi.resize(g.dimension);
  for (int k = 0; k < g.dimension; ++k) {
    box.lo[k] = std::min(from.offset[k], to.offset[k]) - inflate;
    box.hi[k] = std::max(from.offset[k], to.offset[k]) + inflate;
  }
  return box;
}

HarnackBound harnack_bound(const PeriodicGraph& g, const Site& from,
                           const Site& to, double lambda) {
  return harnack_bound(g, from, to, lambda, default_harnack_box(g, from, to));
}

HarnackBound harnack_bound(const PeriodicGraph& g, const Site& from,
                           const Site& to, double lambda,
                           const Box& search_box) {
  if (from.vertex < 0 || from.vertex >= g.vertex_count() || to.vertex < 0 ||
      to.vertex >= g.vertex_count())
    throw KeyError("harnack_bound: vertex index out of range");
  if (int(from.offset.size()) != g.dimension ||
      int(to.offset.size()) != g.dimension)
    throw Error("harnack_bound: site offset has wrong dimension");

  std::vector<double> degs(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    degs[v] = degree(g, v);
    if (!(degs[v] - lambda > 0.0))
      throw DegenerateDegree("harnack_bound: deg(" + g.vertex_names[v] +
                             ") - lambda <= 0");
  }

  HarnackBound result;
  result.from = from;
  result.to = to;
  result.lambda = lambda;
  if (from == to) {
    result.constant = 1.0;
    return result;
  }

  if (!search_box.contains(from.offset) || !search_box.contains(to.offset))
    throw NoPathInWindow("harnack_bound: endpoint outside the search box");

  const std::int64_t cells = search_box.cell_count();
  const int nv = g.vertex_count();
  const std::int64_t nodes = cells * nv;
  auto node_of = [&](const Offset& z, int v) {
    return search_box.index_of(z) * nv + v;
  };

  struct Arc {
    std::int64_t src, dst;
    double cost;      // -log(per-edge constant)
    double constant;  // weight / (deg(tail) - lambda)
  };
  std::vector<Arc> arcs;
  for (std::int64_t c = 0; c < cells; ++c) {
    Offset z = search_box.offset_at(c);
    for (const Edge& ed : g.edges) {
      Offset nb = added(z, ed.offset);
      if (!search_box.contains(nb)) continue;
      std::int64_t s = node_of(z, ed.tail);
      std::int64_t d = node_of(nb, ed.head);
      if (s == d) continue;  // self-loops never help a path
      double cst = ed.weight / (degs[ed.tail] - lambda);
      arcs.push_back({s, d, -std::log(cst), cst});
    }
  }

  // Bellman-Ford: per-edge constants may exceed 1 when lambda is close to a
  // degree, making some costs negative; a reachable negative cycle would make
  // the product unbounded.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nodes, inf);
  std::vector<std::int64_t> pred_node(nodes, -1);
  std::vector<std::int64_t> pred_arc(nodes, -1);
  std::int64_t src = node_of(from.offset, from.vertex);
  std::int64_t dst = node_of(to.offset, to.vertex);
  dist[src] = 0.0;
  bool changed = true;
  for (std::int64_t pass = 0; pass < nodes && changed; ++pass) {
    changed = false;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const Arc& arc = arcs[a];
      if (dist[arc.src] == inf) continue;
      double cand = dist[arc.src] + arc.cost;
      if (cand < dist[arc.dst]) {
        dist[arc.dst] = cand;
        pred_node[arc.dst] = arc.src;
        pred_arc[arc.dst] = std::int64_t(a);
        changed = true;
      }
    }
    if (pass == nodes - 1 && changed)
      throw DegenerateDegree(
          "harnack_bound: per-edge constants admit a product > 1 cycle; "
          "the path product is unbounded in this window");
  }
  if (changed) {
    // loop ended by pass budget while still improving
    throw DegenerateDegree(
        "harnack_bound: per-edge constants admit a product > 1 cycle; "
        "the path product is unbounded in this window");
  }
  if (dist[dst] == inf)
    throw NoPathInWindow("harnack_bound: no directed path from " +
                         site_str(g, from) + " to " + site_str(g, to) +
                         " inside the search box");

  std::vector<std::int64_t> rev_arcs;
  for (std::int64_t n = dst; n != src; n = pred_node[n])
    rev_arcs.push_back(pred_arc[n]);
  std::reverse(rev_arcs.begin(), rev_arcs.end());

  result.witness_path.push_back(from);
  double product = 1.0;
  for (std::int64_t a : rev_arcs) {
    product *= arcs[a].constant;
    std::int64_t n = arcs[a].dst;
    result.witness_path.push_back(
        {search_box.offset_at(n / nv), int(n % nv)});
  }
  result.constant = product;
  return result;
}

}  // namespace latspec
