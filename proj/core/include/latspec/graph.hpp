#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "latspec/errors.hpp"

namespace latspec {

using Offset = std::vector<std::int64_t>;

/// One weighted directed edge of the quotient data: the record
/// (tail, head, z, w) encodes b((0, tail), (z, head)) = w on the cover.
struct Edge {
  int tail = 0;
  int head = 0;
  Offset offset;
  double weight = 0.0;
};

/// A point (z, v) of the cover X = Z^d x V.
struct Site {
  Offset offset;
  int vertex = 0;

  bool operator==(const Site&) const = default;
};

/// A Z^d-periodic weighted directed graph with potential, described by its
/// fundamental domain. Immutable by convention once validated; all operations
/// on it are pure.
///
/// Self-loop records (tail == head, offset == 0) are permitted: quotient
/// constructions produce them. They count towards the degree and the Floquet
/// diagonal but contribute nothing to the operator.
struct PeriodicGraph {
  int dimension = 0;
  std::vector<std::string> vertex_names;
  std::vector<double> potential;  // c, one entry per vertex
  std::vector<Edge> edges;
  int base_vertex = 0;

  int vertex_count() const { return int(vertex_names.size()); }
  int index_of(std::string_view name) const;  // throws KeyError
};

struct Violation {
  std::string code;
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant: positive weights, offset widths,
/// support symmetry, unique edge keys, quotient connectedness and a cycle
/// lattice equal to Z^d. Violations are data, not exceptions.
ValidationReport validate(const PeriodicGraph& g);

/// deg(v) = sum of outgoing weights + c(v).
double degree(const PeriodicGraph& g, int vertex);
double degree(const PeriodicGraph& g, std::string_view vertex);
double max_degree(const PeriodicGraph& g);

/// Axis-aligned box of offsets, inclusive on both ends.
struct Box {
  Offset lo, hi;

  int dim() const { return int(lo.size()); }
  bool contains(const Offset& z) const;
  std::int64_t cell_count() const;
  std::int64_t index_of(const Offset& z) const;  // row-major, last axis fastest
  Offset offset_at(std::int64_t index) const;
};

/// Finite table of values over box x V; the finite stand-in for a function
/// on the cover.
struct WindowFunction {
  Box box;
  int vertices = 0;
  std::vector<double> values;

  double at(const Offset& z, int v) const;
  double& ref(const Offset& z, int v);
};

WindowFunction make_window(const Box& box, int n_vertices);

/// The group shift: values move with the box, (T_z f)(x) = f(x - z).
WindowFunction shift(const WindowFunction& f, const Offset& z);

/// (H_{b,c-lambda} f)(at) summed in edge-list order. Every neighbour of `at`
/// must lie inside the window.
double apply_operator(const PeriodicGraph& g, const WindowFunction& f,
                      const Site& at, double lambda);

/// Chained per-edge bound: every positive lambda-superharmonic f satisfies
/// f(from) >= constant * f(to).
struct HarnackBound {
  Site from, to;
  double lambda = 0.0;
  double constant = 1.0;
  std::vector<Site> witness_path;  // empty when from == to
};

Box default_harnack_box(const PeriodicGraph& g, const Site& from,
                        const Site& to, std::int64_t inflate = 2);

HarnackBound harnack_bound(const PeriodicGraph& g, const Site& from,
                           const Site& to, double lambda,
                           const Box& search_box);
HarnackBound harnack_bound(const PeriodicGraph& g, const Site& from,
                           const Site& to, double lambda);

}  // namespace latspec
