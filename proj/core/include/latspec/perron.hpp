#pragma once

#include <Eigen/Dense>

#include "latspec/errors.hpp"

namespace latspec {

/// Certified Perron-Frobenius data for an irreducible nonnegative matrix.
/// right is normalized to 1 at the base index, left to left . right = 1,
/// and theta is trapped inside [cw_lower, cw_upper].
struct PerronResult {
  double theta = 0.0;
  Eigen::VectorXd right;
  Eigen::VectorXd left;
  double cw_lower = 0.0;
  double cw_upper = 0.0;
  long iterations = 0;
};

/// Power iteration on m + I (the shift keeps the iteration primitive), run
/// simultaneously on m and its transpose, with Collatz-Wielandt ratio
/// enclosures tightened every step. The caller is responsible for
/// irreducibility.
///
/// Throws ConvergenceError (carrying the best enclosure) when the enclosure
/// width stays above tol after max_iter steps, and IrreducibilityError when a
/// ratio vanishes.
PerronResult perron_eigen(const Eigen::MatrixXd& m, double tol = 1e-12,
                          long max_iter = 100000, int base_index = 0,
                          const Eigen::VectorXd& start = Eigen::VectorXd());

}  // namespace latspec
