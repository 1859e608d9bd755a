#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ppg/arith.hpp"

namespace ppg {

/// Dense row-major integer matrix; small sizes only.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<i64> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  i64& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  i64 operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool operator==(const IntMatrix&) const = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
};

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        r(i, j) = checked_add(r(i, j), checked_mul(a(i, k), b(k, j)));
    }
  return r;
}

/// Diagonalisation U*A*V = D over the integers (U, V unimodular). D is
/// diagonal but not necessarily in divisibility order, which is all the
/// pp-formula reduction needs.
struct IntDiagonalForm {
  IntMatrix U, D, V;
  std::size_t rank = 0;
};

inline IntDiagonalForm diagonalize(IntMatrix A) {
  const std::size_t m = A.rows, n = A.cols;
  IntMatrix U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  std::size_t t = 0;
  auto row_axpy = [](IntMatrix& M, std::size_t dst, std::size_t src, i64 f) {
    for (std::size_t c = 0; c < M.cols; ++c)
      M(dst, c) = checked_add(M(dst, c), checked_mul(-f, M(src, c)));
  };
  auto col_axpy = [](IntMatrix& M, std::size_t dst, std::size_t src, i64 f) {
    for (std::size_t r = 0; r < M.rows; ++r)
      M(r, dst) = checked_add(M(r, dst), checked_mul(-f, M(r, src)));
  };
  while (t < m && t < n) {
    // pivot: smallest non-zero magnitude in the trailing block
    std::size_t pr = m, pc = n;
    i64 best = 0;
    for (std::size_t r = t; r < m; ++r)
      for (std::size_t c = t; c < n; ++c) {
        i64 v = A(r, c) < 0 ? -A(r, c) : A(r, c);
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    if (best == 0) break;
    A.swap_rows(t, pr);
    U.swap_rows(t, pr);
    A.swap_cols(t, pc);
    V.swap_cols(t, pc);
    bool clean = true;
    for (std::size_t r = t + 1; r < m; ++r) {
      i64 q = A(r, t) / A(t, t);
      if (q != 0) {
        row_axpy(A, r, t, q);
        row_axpy(U, r, t, q);
      }
      if (A(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < n; ++c) {
      i64 q = A(t, c) / A(t, t);
      if (q != 0) {
        col_axpy(A, c, t, q);
        col_axpy(V, c, t, q);
      }
      if (A(t, c) != 0) clean = false;
    }
    if (clean) ++t;
  }
  return {std::move(U), std::move(A), std::move(V), t};
}

/// Smith form over the local ring Z/p^E. Diagonal entries are p^val[i]
/// (val == E encodes a zero entry). U*A*V == diag (mod p^E).
struct ModSmithForm {
  i64 p = 2;
  int E = 1;
  i64 modulus = 2;
  IntMatrix U, D, V;
  std::vector<int> val;  // one per min(rows, cols) diagonal slot
};

inline ModSmithForm mod_smith(IntMatrix A, i64 p, int E) {
  const i64 q = ipow(p, E);
  const std::size_t m = A.rows, n = A.cols;
  for (auto& x : A.data) x = mod(x, q);
  IntMatrix U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  std::vector<int> val;
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    int bv = E;
    std::size_t pr = t, pc = t;
    for (std::size_t r = t; r < m && bv > 0; ++r)
      for (std::size_t c = t; c < n; ++c) {
        int v = vp(A(r, c), p, E);
        if (v < bv) {
          bv = v;
          pr = r;
          pc = c;
          if (v == 0) break;
        }
      }
    if (bv == E) {
      for (std::size_t s = t; s < k; ++s) val.push_back(E);
      break;
    }
    A.swap_rows(t, pr);
    U.swap_rows(t, pr);
    A.swap_cols(t, pc);
    V.swap_cols(t, pc);
    const i64 pv = ipow(p, bv);
    const i64 unit_inv = inv_mod(A(t, t) / pv, q);
    for (std::size_t c = 0; c < n; ++c) A(t, c) = mulmod(A(t, c), unit_inv, q);
    for (std::size_t c = 0; c < m; ++c) U(t, c) = mulmod(U(t, c), unit_inv, q);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == t || A(r, t) == 0) continue;
      const i64 f = A(r, t) / pv;  // exact: every trailing entry has valuation >= bv
      for (std::size_t c = 0; c < n; ++c) A(r, c) = mod(A(r, c) - static_cast<i128>(f) * A(t, c), q);
      for (std::size_t c = 0; c < m; ++c) U(r, c) = mod(U(r, c) - static_cast<i128>(f) * U(t, c), q);
    }
    for (std::size_t c = t + 1; c < n; ++c) {
      if (A(t, c) == 0) continue;
      const i64 f = A(t, c) / pv;
      for (std::size_t r = 0; r < m; ++r) A(r, c) = mod(A(r, c) - static_cast<i128>(f) * A(r, t), q);
      for (std::size_t r = 0; r < n; ++r) V(r, c) = mod(V(r, c) - static_cast<i128>(f) * V(r, t), q);
    }
    val.push_back(bv);
  }
  return {p, E, q, std::move(U), std::move(A), std::move(V), std::move(val)};
}

/// Solves A*x == b over Z/p^E; returns one solution or nullopt.
inline std::optional<std::vector<i64>> solve_mod(const IntMatrix& A, const std::vector<i64>& b,
                                                 i64 p, int E) {
  ModSmithForm s = mod_smith(A, p, E);
  const i64 q = s.modulus;
  std::vector<i64> ub(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    i128 acc = 0;
    for (std::size_t j = 0; j < A.rows; ++j) acc += static_cast<i128>(s.U(i, j)) * mod(b[j], q);
    ub[i] = mod(acc, q);
  }
  std::vector<i64> y(A.cols, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    if (i < s.val.size() && s.val[i] < E) {
      if (vp(ub[i], p, E) < s.val[i]) return std::nullopt;
      y[i] = ub[i] / ipow(p, s.val[i]);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<i64> x(A.cols, 0);
  for (std::size_t i = 0; i < A.cols; ++i) {
    i128 acc = 0;
    for (std::size_t j = 0; j < A.cols; ++j) acc += static_cast<i128>(s.V(i, j)) * y[j];
    x[i] = mod(acc, q);
  }
  return x;
}

}  // namespace ppg
