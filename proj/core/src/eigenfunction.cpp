#include "latspec/eigenfunction.hpp"

#include <cmath>

#include "latspec/floquet.hpp"
#include "latspec/int_matrix.hpp"
#include "latspec/perron.hpp"

namespace latspec {

namespace {

double character(const std::vector<double>& alpha, const Offset& z) {
  double dot = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) dot += alpha[k] * double(z[k]);
  return std::exp(dot);
}

}  // namespace

MultiplicativeEigenfunction build_eigenfunction(const PeriodicGraph& g,
                                                const std::vector<double>& alpha,
                                                double tol,
                                                const std::vector<double>& start) {
  FloquetMatrix q = assemble_q(g, alpha);
  Eigen::VectorXd s;
  if (!start.empty()) {
    s = Eigen::Map<const Eigen::VectorXd>(start.data(), start.size());
  }
  PerronResult pr = perron_eigen(q.entries, tol, 100000, g.base_vertex, s);
  MultiplicativeEigenfunction f;
  f.alpha = alpha;
  f.lambda = q.max_degree - pr.theta;
  f.profile.assign(pr.right.data(), pr.right.data() + pr.right.size());
  f.graph = g;
  return f;
}

double evaluate(const MultiplicativeEigenfunction& f, const Offset& z, int v) {
  if (v < 0 || v >= int(f.profile.size()))
    throw KeyError("evaluate: vertex index out of range");
  if (z.size() != f.alpha.size())
    throw Error("evaluate: offset has wrong dimension");
  return character(f.alpha, z) * f.profile[v];
}

double evaluate(const MultiplicativeEigenfunction& f, const Offset& z,
                std::string_view vertex) {
  return evaluate(f, z, f.graph.index_of(vertex));
}

WindowFunction sample_window(const MultiplicativeEigenfunction& f,
                             const Box& box) {
  WindowFunction w = make_window(box, int(f.profile.size()));
  for (std::int64_t c = 0; c < box.cell_count(); ++c) {
    Offset z = box.offset_at(c);
    for (int v = 0; v < w.vertices; ++v) w.ref(z, v) = evaluate(f, z, v);
  }
  return w;
}

double residual(const MultiplicativeEigenfunction& f, const Box& window) {
  const PeriodicGraph& g = f.graph;
  double worst = 0.0;
  for (std::int64_t c = 0; c < window.cell_count(); ++c) {
    Offset z = window.offset_at(c);
    for (int v = 0; v < g.vertex_count(); ++v) {
      double here = evaluate(f, z, v);
      double acc = 0.0;
      for (const Edge& ed : g.edges) {
        if (ed.tail != v) continue;
        Offset nb(z.size());
        for (std::size_t k = 0; k < z.size(); ++k)
          nb[k] = checked_add(z[k], ed.offset[k]);
        acc += ed.weight * (here - evaluate(f, nb, ed.head));
      }
      acc += (g.potential[v] - f.lambda) * here;
      double rel = std::abs(acc) / std::max(1.0, std::abs(here));
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

bool check_multiplicative(const MultiplicativeEigenfunction& f,
                          const std::vector<Offset>& samples,
                          const Box& window) {
  for (const Offset& z : samples) {
    double gamma = 1.0 / character(f.alpha, z);
    for (std::int64_t c = 0; c < window.cell_count(); ++c) {
      Offset w = window.offset_at(c);
      Offset shifted(w.size());
      for (std::size_t k = 0; k < w.size(); ++k)
        shifted[k] = checked_sub(w[k], z[k]);
      for (int v = 0; v < int(f.profile.size()); ++v) {
        double lhs = evaluate(f, shifted, v);
        double rhs = gamma * evaluate(f, w, v);
        if (std::abs(lhs - rhs) > 1e-10 * std::abs(rhs)) return false;
      }
    }
  }
  return true;
}

bool check_multiplicative(const WindowFunction& table,
                          const std::vector<double>& alpha,
                          const std::vector<Offset>& samples) {
  for (const Offset& z : samples) {
    double gamma = 1.0 / character(alpha, z);
    for (std::int64_t c = 0; c < table.box.cell_count(); ++c) {
      Offset w = table.box.offset_at(c);
      Offset shifted(w.size());
      for (std::size_t k = 0; k < w.size(); ++k)
        shifted[k] = checked_sub(w[k], z[k]);
      if (!table.box.contains(shifted)) continue;
      for (int v = 0; v < table.vertices; ++v) {
        double lhs = table.at(shifted, v);
        double rhs = gamma * table.at(w, v);
        if (std::abs(lhs - rhs) > 1e-10 * std::abs(rhs)) return false;
      }
    }
  }
  return true;
}

}  // namespace latspec
