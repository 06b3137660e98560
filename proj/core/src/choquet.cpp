#include "latspec/choquet.hpp"

#include <algorithm>
#include <cmath>

#include "latspec/eigenfunction.hpp"
#include "latspec/levelset.hpp"
#include "latspec/nnls.hpp"

namespace latspec {

WindowFunction synthesize(const PeriodicGraph& g, const DiscreteMeasure& m,
                          const Box& window, double tol) {
  WindowFunction out = make_window(window, g.vertex_count());
  for (const MeasureAtom& atom : m.atoms) {
    if (atom.weight < 0.0)
      throw Error("synthesize: atom weights must be nonnegative");
    MultiplicativeEigenfunction f = build_eigenfunction(g, atom.alpha, tol);
    for (std::int64_t c = 0; c < window.cell_count(); ++c) {
      Offset z = window.offset_at(c);
      for (int v = 0; v < out.vertices; ++v)
        out.ref(z, v) += atom.weight * evaluate(f, z, v);
    }
  }
  return out;
}

DecomposeResult decompose(const PeriodicGraph& g, double lambda,
                          const WindowFunction& samples, int grid,
                          double tol) {
  if (samples.vertices != g.vertex_count())
    throw Error("decompose: sample window does not match the graph");
  LevelSet set = trace_level_set(g, lambda, grid, tol);  // NoSolution above

  const std::int64_t cells = samples.box.cell_count();
  const int nv = samples.vertices;
  const int natoms = int(set.points.size());
  Eigen::MatrixXd dict(cells * nv, natoms);
  for (int j = 0; j < natoms; ++j) {
    MultiplicativeEigenfunction f = build_eigenfunction(g, set.points[j]);
    for (std::int64_t c = 0; c < cells; ++c) {
      Offset z = samples.box.offset_at(c);
      for (int v = 0; v < nv; ++v) dict(c * nv + v, j) = evaluate(f, z, v);
    }
  }
  Eigen::VectorXd b(cells * nv);
  for (std::int64_t c = 0; c < cells; ++c) {
    Offset z = samples.box.offset_at(c);
    for (int v = 0; v < nv; ++v) b[c * nv + v] = samples.at(z, v);
  }

  // column scales vary wildly across the window; normalize for conditioning
  Eigen::VectorXd scale(natoms);
  Eigen::MatrixXd dict_n = dict;
  for (int j = 0; j < natoms; ++j) {
    scale[j] = dict.col(j).norm();
    if (scale[j] > 0.0) dict_n.col(j) /= scale[j];
  }

  NnlsResult fit = nnls(dict_n, b);

  DecomposeResult out;
  out.measure.lambda = lambda;
  Eigen::VectorXd w(natoms);
  for (int j = 0; j < natoms; ++j) {
    w[j] = scale[j] > 0.0 ? fit.x[j] / scale[j] : 0.0;
    if (w[j] > 0.0) out.measure.atoms.push_back({set.points[j], w[j]});
  }
  double bnorm = b.norm();
  out.residual = bnorm > 0.0 ? (dict * w - b).norm() / bnorm : 0.0;
  return out;
}

Box default_synthesis_window(const DiscreteMeasure& m, int dimension,
                             double cap, std::int64_t max_radius) {
  Box box;
  box.lo.assign(dimension, 0);
  box.hi.assign(dimension, 0);
  const double log_cap = std::log(cap);
  for (int k = 0; k < dimension; ++k) {
    double worst = 0.0;
    for (const MeasureAtom& atom : m.atoms)
      worst = std::max(worst, std::abs(atom.alpha[k]));
    std::int64_t radius =
        worst > 0.0 ? std::int64_t(log_cap / worst) : max_radius;
    radius = std::clamp<std::int64_t>(radius, 1, max_radius);
    box.lo[k] = -radius;
    box.hi[k] = radius;
  }
  return box;
}

}  // namespace latspec
