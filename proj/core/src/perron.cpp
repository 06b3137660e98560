#include "latspec/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latspec {

namespace {

// Collatz-Wielandt ratios of m at a positive vector x: every positive x
// yields min_i (m x)_i / x_i <= theta <= max_i (m x)_i / x_i.
struct Ratios {
  double lo, hi;
};

Ratios cw_ratios(const Eigen::VectorXd& mx, const Eigen::VectorXd& x) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double r = mx[i] / x[i];
    if (!std::isfinite(r) || r == 0.0)
      throw IrreducibilityError(
          "perron_eigen: vanished or non-finite ratio; input is not "
          "irreducible or has a zero row");
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace

PerronResult perron_eigen(const Eigen::MatrixXd& m, double tol, long max_iter,
                          int base_index, const Eigen::VectorXd& start) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n)
    throw Error("perron_eigen: matrix must be square and nonempty");
  if (!(tol > 0.0)) throw Error("perron_eigen: tol must be positive");
  if (base_index < 0 || base_index >= n)
    throw Error("perron_eigen: base index out of range");
  if (m.minCoeff() < 0.0 || !m.allFinite())
    throw Error("perron_eigen: matrix must be nonnegative and finite");

  Eigen::VectorXd x = start.size() ? start : Eigen::VectorXd::Ones(n);
  if (x.size() != n || x.minCoeff() <= 0.0)
    throw Error("perron_eigen: start vector must be positive of matching size");
  Eigen::VectorXd y = Eigen::VectorXd::Ones(n);

  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  long it = 0;
  bool converged = false;
  Eigen::VectorXd mx(n), my(n);
  while (it < max_iter) {
    ++it;
    mx.noalias() = m * x;
    my.noalias() = m.transpose() * y;
    Ratios rx = cw_ratios(mx, x);
    Ratios ry = cw_ratios(my, y);
    lower = std::max(lower, std::max(rx.lo, ry.lo));
    upper = std::min(upper, std::min(rx.hi, ry.hi));
    if (upper - lower <= tol) {
      converged = true;
      break;
    }
    // shifted step: z = (m + I) x, renormalized by the sup norm
    x = (mx + x) / (mx + x).maxCoeff();
    y = (my + y) / (my + y).maxCoeff();
  }
  if (!converged)
    throw ConvergenceError(
        "perron_eigen: enclosure width " + std::to_string(upper - lower) +
            " above tolerance after " + std::to_string(it) + " iterations",
        it, lower, upper);

  PerronResult res;
  res.iterations = it;
  res.cw_lower = lower;
  res.cw_upper = upper;
  double rayleigh = y.dot(m * x) / y.dot(x);
  res.theta = std::clamp(rayleigh, lower, upper);
  res.right = x / x[base_index];
  res.left = y / y.dot(res.right);
  return res;
}

}  // namespace latspec
