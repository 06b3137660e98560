#include "latspec/floquet.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace latspec {

FloquetMatrix assemble_q(const PeriodicGraph& g,
                         const std::vector<double>& alpha) {
  if (int(alpha.size()) != g.dimension)
    throw Error("assemble_q: alpha has length " +
                std::to_string(alpha.size()) + ", expected " +
                std::to_string(g.dimension));
  const int n = g.vertex_count();
  FloquetMatrix q;
  q.alpha = alpha;
  q.entries = Eigen::MatrixXd::Zero(n, n);
  q.max_degree = max_degree(g);

  for (const Edge& ed : g.edges) {
    double dot = 0.0;
    for (int k = 0; k < g.dimension; ++k) dot += alpha[k] * double(ed.offset[k]);
    if (std::abs(dot) > 700.0) {
      std::ostringstream os;
      os << "assemble_q: exp(<alpha,z>) overflows on edge "
         << g.vertex_names[ed.tail] << "->" << g.vertex_names[ed.head]
         << " with <alpha,z> = " << dot;
      throw OverflowError(os.str());
    }
    q.entries(ed.tail, ed.head) += ed.weight * std::exp(dot);
  }
  for (int v = 0; v < n; ++v)
    q.entries(v, v) += q.max_degree - degree(g, v);
  return q;
}

bool is_irreducible(const FloquetMatrix& m) {
  const int n = int(m.entries.rows());
  if (n <= 1) return true;
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        double e = transpose ? m.entries(w, v) : m.entries(v, w);
        if (w != v && e > 0.0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (int v = 0; v < n; ++v)
      if (!seen[v]) return false;
    return true;
  };
  return reach(false) && reach(true);
}

Eigen::MatrixXd ground_state_operator(const PeriodicGraph& g,
                                      const std::vector<double>& alpha) {
  FloquetMatrix q = assemble_q(g, alpha);
  Eigen::MatrixXd out = -q.entries;
  out.diagonal().array() += q.max_degree;
  return out;
}

}  // namespace latspec
