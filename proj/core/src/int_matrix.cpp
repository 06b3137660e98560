#include "latspec/int_matrix.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace latspec {

namespace {

// Elementary row operations shared by HNF and SNF, applied in lockstep to a
// companion matrix so the unimodular factor comes out for free.

void swap_rows(IntMatrix& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void negate_row(IntMatrix& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = checked_sub(0, m.at(i, c));
}

// row_i -= q * row_j
void add_row_multiple(IntMatrix& m, int i, int j, std::int64_t q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols; ++c)
    m.at(i, c) = checked_sub(m.at(i, c), checked_mul(q, m.at(j, c)));
}

void swap_cols(IntMatrix& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// col_i -= q * col_j
void add_col_multiple(IntMatrix& m, int i, int j, std::int64_t q) {
  if (q == 0) return;
  for (int r = 0; r < m.rows; ++r)
    m.at(r, i) = checked_sub(m.at(r, i), checked_mul(q, m.at(r, j)));
}

struct EchelonResult {
  IntMatrix h;
  IntMatrix u;
  int rank = 0;
};

// Bottom-up row echelon over the integers: pivots are placed into the last
// rows while scanning columns right to left, which yields the lower-triangular
// HNF for square full-rank input.
EchelonResult echelon(const IntMatrix& m) {
  EchelonResult res{m, IntMatrix::identity(m.rows), 0};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;

  int r = m.rows - 1;
  for (int j = m.cols - 1; j >= 0 && r >= 0; --j) {
    // Euclid among rows 0..r until at most one nonzero entry remains in
    // column j; keep it in row r.
    while (true) {
      int best = -1;
      for (int i = 0; i <= r; ++i) {
        if (h.at(i, j) == 0) continue;
        if (best < 0 ||
            std::llabs(h.at(i, j)) < std::llabs(h.at(best, j)))
          best = i;
      }
      if (best < 0) break;  // column empty among active rows
      if (best != r) {
        swap_rows(h, best, r);
        swap_rows(u, best, r);
      }
      bool done = true;
      for (int i = 0; i < r; ++i) {
        if (h.at(i, j) == 0) continue;
        std::int64_t q = h.at(i, j) / h.at(r, j);
        add_row_multiple(h, i, r, q);
        add_row_multiple(u, i, r, q);
        if (h.at(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h.at(r, j) == 0) continue;
    if (h.at(r, j) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    // entries below the pivot reduced into [0, pivot)
    for (int i = r + 1; i < m.rows; ++i) {
      std::int64_t q = floor_div(h.at(i, j), h.at(r, j));
      add_row_multiple(h, i, r, q);
      add_row_multiple(u, i, r, q);
    }
    ++res.rank;
    --r;
  }
  return res;
}

}  // namespace

IntMatrix::IntMatrix(int r, int c, std::vector<std::int64_t> entries)
    : rows(r), cols(c), data(std::move(entries)) {
  if (data.size() != std::size_t(r) * c)
    throw Error("IntMatrix: entry count does not match shape");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow in lattice arithmetic (add)");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw OverflowError("integer overflow in lattice arithmetic (sub)");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in lattice arithmetic (mul)");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw Error("IntMatrix multiply: shape mismatch");
  IntMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      std::int64_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        out.at(i, j) = checked_add(out.at(i, j), checked_mul(aik, b.at(k, j)));
    }
  return out;
}

std::int64_t determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error("determinant: matrix not square");
  int n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination; divisions are exact.
  IntMatrix a = m;
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        std::int64_t num = checked_sub(checked_mul(a.at(i, j), a.at(k, k)),
                                       checked_mul(a.at(i, k), a.at(k, j)));
        a.at(i, j) = num / prev;
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : checked_sub(0, a.at(n - 1, n - 1));
}

HnfResult hermite_normal_form(const IntMatrix& basis) {
  if (basis.rows == 0) return {basis, IntMatrix::identity(0)};
  EchelonResult e = echelon(basis);
  if (e.rank != basis.rows)
    throw RankError("hermite_normal_form: rows are linearly dependent");
  return {std::move(e.h), std::move(e.u)};
}

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult res;
  res.left = IntMatrix::identity(m.rows);
  res.right = IntMatrix::identity(m.cols);
  res.right_inv = IntMatrix::identity(m.cols);
  IntMatrix a = m;

  // Every column operation on `a`/`right` is mirrored on right_inv by the
  // inverse operation from the left, keeping right * right_inv = I.
  int t = 0;
  int nmin = std::min(m.rows, m.cols);
  while (t < nmin) {
    // locate the smallest nonzero entry in the trailing block
    int pi = -1, pj = -1;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j) {
        if (a.at(i, j) == 0) continue;
        if (pi < 0 || std::llabs(a.at(i, j)) < std::llabs(a.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block vanished; remaining diag is zero
    if (pi != t) {
      swap_rows(a, pi, t);
      swap_rows(res.left, pi, t);
    }
    if (pj != t) {
      swap_cols(a, pj, t);
      swap_cols(res.right, pj, t);
      swap_rows(res.right_inv, pj, t);  // (E_swap)^{-1} from the left
    }

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m.rows; ++i) {
        if (a.at(i, t) == 0) continue;
        std::int64_t q = a.at(i, t) / a.at(t, t);
        add_row_multiple(a, i, t, q);
        add_row_multiple(res.left, i, t, q);
        if (a.at(i, t) != 0) {
          // remainder smaller than pivot: swap into pivot position
          swap_rows(a, i, t);
          swap_rows(res.left, i, t);
          clean = false;
        }
      }
      for (int j = t + 1; j < m.cols; ++j) {
        if (a.at(t, j) == 0) continue;
        std::int64_t q = a.at(t, j) / a.at(t, t);
        add_col_multiple(a, j, t, q);
        add_col_multiple(res.right, j, t, q);
        // inverse op on right_inv: row_t += q * row_j
        add_row_multiple(res.right_inv, t, j, checked_sub(0, q));
        if (a.at(t, j) != 0) {
          swap_cols(a, j, t);
          swap_cols(res.right, j, t);
          swap_rows(res.right_inv, j, t);
          clean = false;
        }
      }
    }

    // divisibility: pivot must divide every entry of the trailing block
    bool redo = false;
    for (int i = t + 1; i < m.rows && !redo; ++i)
      for (int j = t + 1; j < m.cols && !redo; ++j)
        if (a.at(i, j) % a.at(t, t) != 0) {
          // fold row i into row t and restart elimination at t
          add_row_multiple(a, t, i, -1);
          add_row_multiple(res.left, t, i, -1);
          redo = true;
        }
    if (redo) continue;

    if (a.at(t, t) < 0) {
      negate_row(a, t);
      negate_row(res.left, t);
    }
    ++t;
  }

  res.diag.resize(nmin);
  for (int i = 0; i < nmin; ++i) res.diag[i] = a.at(i, i);
  return res;
}

bool lattice_spans_zd(const IntMatrix& generators, int d) {
  if (generators.cols != d)
    throw Error("lattice_spans_zd: generators have wrong width");
  if (d == 0) return true;
  EchelonResult e = echelon(generators);
  if (e.rank != d) return false;
  // pivots sit on the last d rows; spanning needs them all equal to 1
  int base = generators.rows - d;
  for (int i = 0; i < d; ++i) {
    // pivot of row base+i is its last nonzero entry
    std::int64_t piv = 0;
    for (int j = d - 1; j >= 0; --j)
      if (e.h.at(base + i, j) != 0) {
        piv = e.h.at(base + i, j);
        break;
      }
    if (piv != 1) return false;
  }
  return true;
}

}  // namespace latspec
