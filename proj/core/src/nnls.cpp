#include "latspec/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "latspec/errors.hpp"

namespace latspec {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a,
                              const Eigen::VectorXd& b,
                              const std::vector<int>& passive) {
  Eigen::MatrixXd ap(a.rows(), passive.size());
  for (std::size_t j = 0; j < passive.size(); ++j)
    ap.col(j) = a.col(passive[j]);
  return ap.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                double tol, int max_iter) {
  const int n = int(a.cols());
  if (a.rows() != b.size()) throw Error("nnls: shape mismatch");
  if (max_iter < 0) max_iter = 3 * std::max(n, 10);
  if (tol < 0.0)
    tol = 10.0 * std::numeric_limits<double>::epsilon() *
          a.cwiseAbs().maxCoeff() * std::max(a.rows(), a.cols());

  NnlsResult res;
  res.x = Eigen::VectorXd::Zero(n);
  std::vector<char> in_passive(n, 0);
  std::vector<int> passive;
  Eigen::VectorXd r = b;

  int outer = 0;
  while (outer < max_iter) {
    ++outer;
    Eigen::VectorXd w = a.transpose() * r;
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < n; ++j) {
      if (in_passive[j]) continue;
      if (w[j] > best_w) {  // strict: ties resolve to the lowest index
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;  // KKT satisfied
    in_passive[best] = 1;
    passive.push_back(best);

    while (true) {
      Eigen::VectorXd z = solve_passive(a, b, passive);
      bool feasible = true;
      for (std::size_t j = 0; j < passive.size(); ++j)
        if (z[j] <= 0.0) {
          feasible = false;
          break;
        }
      if (feasible) {
        res.x.setZero();
        for (std::size_t j = 0; j < passive.size(); ++j)
          res.x[passive[j]] = z[j];
        break;
      }
      // step towards z until the first coordinate hits zero
      double step = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < passive.size(); ++j) {
        if (z[j] > 0.0) continue;
        double xj = res.x[passive[j]];
        double cand = xj / (xj - z[j]);
        if (cand < step) step = cand;
      }
      for (std::size_t j = 0; j < passive.size(); ++j) {
        int col = passive[j];
        res.x[col] += step * (z[j] - res.x[col]);
      }
      // drop zeroed coordinates, lowest index first
      std::vector<int> kept;
      for (int col : passive) {
        if (res.x[col] <= 1e-14 * std::abs(res.x.maxCoeff())) {
          in_passive[col] = 0;
          res.x[col] = 0.0;
        } else {
          kept.push_back(col);
        }
      }
      if (kept.size() == passive.size()) {
        // numerical stall: force-drop the smallest coordinate
        int drop = kept[0];
        for (int col : kept)
          if (res.x[col] < res.x[drop]) drop = col;
        in_passive[drop] = 0;
        res.x[drop] = 0.0;
        kept.erase(std::find(kept.begin(), kept.end(), drop));
      }
      passive = std::move(kept);
      if (passive.empty()) break;
    }
    r = b - a * res.x;
  }
  res.iterations = outer;
  res.residual_norm = (b - a * res.x).norm();
  return res;
}

}  // namespace latspec
