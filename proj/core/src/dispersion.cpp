#include "latspec/dispersion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace latspec {

namespace {

double lambda_value(const PeriodicGraph& g, const std::vector<double>& alpha,
                    double tol) {
  FloquetMatrix q = assemble_q(g, alpha);
  PerronResult pr = perron_eigen(q.entries, tol, 100000, g.base_vertex);
  return q.max_degree - pr.theta;
}

std::vector<double> gradient_from(const PeriodicGraph& g,
                                  const FloquetMatrix& q,
                                  const PerronResult& pr) {
  const int n = g.vertex_count();
  std::vector<double> grad(g.dimension, 0.0);
  for (int k = 0; k < g.dimension; ++k) {
    Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& ed : g.edges) {
      double dot = 0.0;
      for (int j = 0; j < g.dimension; ++j)
        dot += q.alpha[j] * double(ed.offset[j]);
      dq(ed.tail, ed.head) +=
          ed.weight * double(ed.offset[k]) * std::exp(dot);
    }
    double dtheta = pr.left.dot(dq * pr.right) / pr.left.dot(pr.right);
    grad[k] = -dtheta;
  }
  return grad;
}

}  // namespace

DispersionPoint lambda_at(const PeriodicGraph& g,
                          const std::vector<double>& alpha, double tol) {
  FloquetMatrix q = assemble_q(g, alpha);
  PerronResult pr = perron_eigen(q.entries, tol, 100000, g.base_vertex);
  DispersionPoint p;
  p.alpha = alpha;
  p.theta = pr.theta;
  p.lambda = q.max_degree - pr.theta;
  p.gradient = gradient_from(g, q, pr);
  return p;
}

std::vector<double> lambda_gradient(const PeriodicGraph& g,
                                    const std::vector<double>& alpha,
                                    double tol) {
  FloquetMatrix q = assemble_q(g, alpha);
  PerronResult pr = perron_eigen(q.entries, tol, 100000, g.base_vertex);
  return gradient_from(g, q, pr);
}

Lambda0Result find_lambda0(const PeriodicGraph& g, double grad_tol,
                           long max_iter, const std::vector<double>& start) {
  if (!(grad_tol > 0.0)) throw Error("find_lambda0: grad_tol must be positive");
  const int d = g.dimension;
  if (d == 0) {
    Lambda0Result res;
    res.lambda0 = lambda_value(g, {}, 1e-13);
    res.iterations = 0;
    res.gradient_norm = 0.0;
    return res;
  }

  std::vector<double> alpha = start.empty() ? std::vector<double>(d, 0.0)
                                            : start;
  if (int(alpha.size()) != d)
    throw Error("find_lambda0: start has wrong dimension");
  const double pf_tol = std::min(1e-12, 0.1 * grad_tol);

  double best_lambda = -std::numeric_limits<double>::infinity();
  std::vector<double> best_alpha = alpha;
  for (long it = 1; it <= max_iter; ++it) {
    DispersionPoint p = lambda_at(g, alpha, pf_tol);
    double gn2 = 0.0;
    for (double gk : p.gradient) gn2 += gk * gk;
    double gn = std::sqrt(gn2);
    if (p.lambda > best_lambda) {
      best_lambda = p.lambda;
      best_alpha = alpha;
    }
    if (gn <= grad_tol) {
      Lambda0Result res;
      res.lambda0 = p.lambda;
      res.alpha_star = alpha;
      res.gradient_norm = gn;
      res.iterations = it;
      return res;
    }
    // Armijo backtracking along the gradient, c = 1e-4, halving from 1
    double t = 1.0;
    std::vector<double> trial(d);
    while (true) {
      for (int k = 0; k < d; ++k) trial[k] = alpha[k] + t * p.gradient[k];
      double lt = lambda_value(g, trial, pf_tol);
      if (lt >= p.lambda + 1e-4 * t * gn2) break;
      t *= 0.5;
      if (t < 1e-18) {
        std::ostringstream os;
        os << "find_lambda0: line search stalled at lambda = " << p.lambda
           << " with gradient norm " << gn;
        throw ConvergenceError(os.str(), it);
      }
    }
    alpha = trial;
  }
  std::ostringstream os;
  os << "find_lambda0: gradient norm above " << grad_tol << " after "
     << max_iter << " iterations; best lambda = " << best_lambda;
  throw ConvergenceError(os.str(), max_iter);
}

double spectral_lower_bound(const PeriodicGraph& g,
                            const std::vector<double>& alpha, double tol) {
  return lambda_value(g, alpha, tol);
}

}  // namespace latspec
