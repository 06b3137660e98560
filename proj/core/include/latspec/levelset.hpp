#pragma once

#include <string>
#include <vector>

#include "latspec/graph.hpp"

namespace latspec {

/// Sampled boundary of the superlevel set {Lambda >= lambda}: a pair of
/// points for d = 1, a convex closed curve for d = 2, a sampled sphere
/// beyond. point[i] = center + radii[i] * directions[i].
struct LevelSet {
  double lambda = 0.0;
  std::vector<double> center;
  std::vector<std::vector<double>> points;
  std::vector<std::vector<double>> directions;
  std::vector<double> radii;
};

/// The unique t > 0 with Lambda(center + t * direction) = lambda, found by
/// geometric bracket expansion followed by bisection. Assumes center is the
/// maximizer so Lambda is strictly decreasing along the ray.
double radial_solve(const PeriodicGraph& g, const std::vector<double>& center,
                    const std::vector<double>& direction, double lambda,
                    double tol = 1e-9);

/// Deterministic boundary trace: directions +-1 for d = 1 (n_directions is
/// ignored there), equispaced angles for d = 2, a spherical Fibonacci lattice
/// for d = 3 and a Kronecker low-discrepancy sphere sample beyond.
/// Throws NoSolution for lambda within tol of lambda_0 or above, EmptySet for
/// d = 0.
LevelSet trace_level_set(const PeriodicGraph& g, double lambda,
                         int n_directions, double tol = 1e-9);

/// CSV with header alpha_1,...,alpha_d,lambda and one row per traced point.
std::string level_set_csv(const LevelSet& set);

}  // namespace latspec
