#pragma once

#include <string_view>
#include <vector>

#include "latspec/graph.hpp"

namespace latspec {

/// A positive multiplicative generalised eigenfunction in tensor form:
/// f(z, v) = exp(<alpha, z>) * profile(v), normalized to 1 at the base cell.
struct MultiplicativeEigenfunction {
  std::vector<double> alpha;
  double lambda = 0.0;
  std::vector<double> profile;  // indexed like the graph's vertices
  PeriodicGraph graph;
};

/// Profile = Perron right eigenvector of Q_alpha, eigenvalue
/// lambda = max_degree - theta(alpha). An explicit positive start vector for
/// the underlying power iteration may be supplied (uniqueness checks).
MultiplicativeEigenfunction build_eigenfunction(
    const PeriodicGraph& g, const std::vector<double>& alpha,
    double tol = 1e-12, const std::vector<double>& start = {});

double evaluate(const MultiplicativeEigenfunction& f, const Offset& z, int v);
double evaluate(const MultiplicativeEigenfunction& f, const Offset& z,
                std::string_view vertex);

/// Fills a window table with the eigenfunction's values.
WindowFunction sample_window(const MultiplicativeEigenfunction& f,
                             const Box& box);

/// max over cells of |(H - lambda) f| / max(1, |f|); neighbours outside the
/// window are evaluated through the closed multiplicative form, so the value
/// reflects only the eigenpair accuracy.
double residual(const MultiplicativeEigenfunction& f, const Box& window);

/// True iff f(w - z, v) matches exp(-<alpha, z>) f(w, v) to 1e-10 relative
/// for every sampled shift z and every cell of the window.
bool check_multiplicative(const MultiplicativeEigenfunction& f,
                          const std::vector<Offset>& samples,
                          const Box& window);

/// Same test against an arbitrary tabulated function (negative controls:
/// any tensor-form function is multiplicative, a table need not be). Cells
/// whose shifted partner leaves the table are skipped.
bool check_multiplicative(const WindowFunction& table,
                          const std::vector<double>& alpha,
                          const std::vector<Offset>& samples);

}  // namespace latspec
