#pragma once

#include <cstdint>
#include <vector>

#include "latspec/errors.hpp"

namespace latspec {

/// Dense integer matrix with exact, overflow-checked arithmetic.
/// Row-major; rows act as lattice vectors throughout this library.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0) {}
  IntMatrix(int r, int c, std::vector<std::int64_t> entries);

  static IntMatrix identity(int n);

  std::int64_t& at(int i, int j) { return data[std::size_t(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return data[std::size_t(i) * cols + j]; }

  bool operator==(const IntMatrix&) const = default;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Floor division, exact for negative numerators.
std::int64_t floor_div(std::int64_t a, std::int64_t b);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant (square input) via fraction-free elimination.
std::int64_t determinant(const IntMatrix& m);

struct HnfResult {
  IntMatrix hnf;         // hnf = unimodular * input
  IntMatrix unimodular;  // det +-1
};

/// Row-style Hermite normal form, lower-triangular convention: pivots are
/// positive, sit on weakly increasing columns, rows are zero to the right of
/// their pivot, and entries below a pivot are reduced into [0, pivot).
/// Throws RankError when the rows are linearly dependent.
HnfResult hermite_normal_form(const IntMatrix& basis);

struct SnfResult {
  IntMatrix left;    // unimodular, rows x rows
  std::vector<std::int64_t> diag;
  IntMatrix right;      // unimodular, cols x cols
  IntMatrix right_inv;  // exact inverse of right
};

/// Smith normal form: left * m * right is diagonal with diag[0] | diag[1] | ...
/// Trailing zeros appear when m is rank deficient.
SnfResult smith_normal_form(const IntMatrix& m);

/// True iff the integer row span of `generators` is all of Z^d.
bool lattice_spans_zd(const IntMatrix& generators, int d);

}  // namespace latspec
