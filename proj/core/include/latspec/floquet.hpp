#pragma once

#include <Eigen/Dense>
#include <vector>

#include "latspec/graph.hpp"

namespace latspec {

/// The finite |V| x |V| nonnegative matrix attached to a real character
/// exponent alpha. Its entry (v, w) accumulates weight * exp(<alpha, z>)
/// over edges v -> w with offset z; the diagonal additionally carries the
/// shift max_degree - deg(v), which keeps all entries nonnegative.
struct FloquetMatrix {
  std::vector<double> alpha;
  Eigen::MatrixXd entries;
  double max_degree = 0.0;
};

/// Deterministic accumulation in edge-list order. Throws OverflowError when
/// |<alpha, z>| exceeds 700 for some edge.
FloquetMatrix assemble_q(const PeriodicGraph& g,
                         const std::vector<double>& alpha);

/// True iff the support digraph of the entries is strongly connected.
bool is_irreducible(const FloquetMatrix& m);

/// max_degree * I - Q_alpha; same eigenvectors as Q_alpha with reflected
/// eigenvalues.
Eigen::MatrixXd ground_state_operator(const PeriodicGraph& g,
                                      const std::vector<double>& alpha);

}  // namespace latspec
