#pragma once

#include <vector>

#include "latspec/graph.hpp"

namespace latspec {

struct MeasureAtom {
  std::vector<double> alpha;
  double weight = 0.0;
};

/// Finite atomic measure on the level set {Lambda = lambda}. The synthesized
/// function takes the value sum of weights at the base cell.
struct DiscreteMeasure {
  double lambda = 0.0;
  std::vector<MeasureAtom> atoms;
};

/// f(z, v) = sum_i weight_i * exp(<alpha_i, z>) * profile_i(v) over the
/// window. An empty atom list yields the zero function.
WindowFunction synthesize(const PeriodicGraph& g, const DiscreteMeasure& m,
                          const Box& window, double tol = 1e-12);

struct DecomposeResult {
  DiscreteMeasure measure;
  double residual = 0.0;  // relative l2 misfit on the window
};

/// Traces the level set with `grid` directions, builds the dictionary of
/// eigenfunction window columns and solves the nonnegative least-squares fit.
/// Atoms with zero weight are dropped.
DecomposeResult decompose(const PeriodicGraph& g, double lambda,
                          const WindowFunction& samples, int grid,
                          double tol = 1e-9);

/// Largest symmetric box on which exp(<alpha, z>) stays below `cap` for all
/// atoms; degenerate measures get radius `max_radius`.
Box default_synthesis_window(const DiscreteMeasure& m, int dimension,
                             double cap = 1e12, std::int64_t max_radius = 16);

}  // namespace latspec
