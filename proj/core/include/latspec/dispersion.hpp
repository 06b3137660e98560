#pragma once

#include <vector>

#include "latspec/floquet.hpp"
#include "latspec/graph.hpp"
#include "latspec/perron.hpp"

namespace latspec {

/// One evaluation of the dispersion function: Lambda(alpha) =
/// max_degree - theta(alpha), together with its gradient.
struct DispersionPoint {
  std::vector<double> alpha;
  double theta = 0.0;
  double lambda = 0.0;
  std::vector<double> gradient;
};

/// The supremum of Lambda with its unique maximizer.
struct Lambda0Result {
  double lambda0 = 0.0;
  std::vector<double> alpha_star;
  double gradient_norm = 0.0;
  long iterations = 0;
};

DispersionPoint lambda_at(const PeriodicGraph& g,
                          const std::vector<double>& alpha, double tol = 1e-12);

/// grad Lambda = -grad theta, with (grad theta)_k = psi^T (dQ/da_k) phi
/// / (psi^T phi); the diagonal shift does not depend on alpha.
std::vector<double> lambda_gradient(const PeriodicGraph& g,
                                    const std::vector<double>& alpha,
                                    double tol = 1e-12);

/// Gradient ascent with Armijo backtracking on the strictly concave Lambda.
/// For d = 0 the single Floquet matrix decides the value directly.
Lambda0Result find_lambda0(const PeriodicGraph& g, double grad_tol = 1e-9,
                           long max_iter = 500,
                           const std::vector<double>& start = {});

/// max_degree - theta(alpha); always a lower bound for lambda_0, tight at
/// the maximizer.
double spectral_lower_bound(const PeriodicGraph& g,
                            const std::vector<double>& alpha,
                            double tol = 1e-12);

}  // namespace latspec
