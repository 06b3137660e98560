#pragma once

#include <Eigen/Dense>

namespace latspec {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// min ||A x - b||_2 subject to x >= 0, by the classical active-set method
/// with deterministic tie-breaking (lowest index wins).
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                double tol = -1.0, int max_iter = -1);

}  // namespace latspec
