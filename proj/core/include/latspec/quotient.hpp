#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "latspec/graph.hpp"
#include "latspec/int_matrix.hpp"

namespace latspec {

/// A sublattice R of Z^d, given by independent integer rows.
struct Sublattice {
  IntMatrix basis;
};

enum class QuotientKind { FiniteTorus, Periodic };

/// The factored space, graph and potential. A full-rank sublattice yields a
/// finite torus, exported as a dimension-0 graph with coset-tagged vertex
/// names; a primitive lower-rank sublattice yields a periodic graph of
/// dimension d - k after an exact unimodular change of coordinates.
struct QuotientGraph {
  QuotientKind kind = QuotientKind::FiniteTorus;
  PeriodicGraph graph;
  IntMatrix transform;  // torus: HNF of the basis; periodic: column matrix U
                        // with quotient offset = last d-k coords of z * U
  int rank = 0;
  std::vector<Offset> coset_reps;  // torus only, lexicographic order

  /// Maps a cover site to the corresponding quotient site.
  Site project(const Site& cover_site) const;
};

/// Quotient by a full-rank sublattice: |det| cosets, edge weights summed over
/// coset-equivalent targets. Self-loops are kept in the weights; they never
/// reach the operator.
QuotientGraph factor_full_rank(const PeriodicGraph& g, const Sublattice& L);

/// Quotient by a primitive (saturated) sublattice of rank k < d. Throws
/// TorsionError when the Smith form shows an invariant factor > 1.
QuotientGraph factor_primitive(const PeriodicGraph& g, const Sublattice& L);

/// Max discrepancy over the window between H applied to the lifted function
/// and the lift of the factored operator applied downstairs. Zero up to
/// rounding when the factoring is correct.
double intertwine_check(const PeriodicGraph& g, const Sublattice& L,
                        const std::function<double(const Site&)>& f_quotient,
                        const Box& window);

/// True iff factoring (b, c - lambda) equals (b_R, c_R - lambda)
/// entry-for-entry.
bool potential_shift_consistency(const PeriodicGraph& g, const Sublattice& L,
                                 double lambda);

/// Dense operator matrix of a dimension-0 graph (H f)(x) =
/// sum_y b(x,y)(f(x)-f(y)) + c(x) f(x); self-loops contribute nothing.
Eigen::MatrixXd finite_operator(const PeriodicGraph& torus);

/// Number of singular values below rtol * sigma_max.
int kernel_dimension(const Eigen::MatrixXd& m, double rtol = 1e-9);

}  // namespace latspec
