#pragma once

// Dense linear algebra over GF(q) on row-major matrices of element codes.

#include <cstddef>
#include <vector>

#include "tgq/gf.hpp"

namespace tgq {

using Vec = std::vector<Elem>;
using Matrix = std::vector<Vec>;

/// In-place reduced row echelon form. Zero rows are dropped. Returns pivot columns.
inline std::vector<int> rref_inplace(const FiniteField& f, Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    if (m[r][c] != 1) {
      const Elem s = f.inv(m[r][c]);
      for (std::size_t k = c; k < cols; ++k) m[r][k] = f.mul(m[r][k], s);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Elem factor = f.neg(m[i][c]);
      for (std::size_t k = c; k < cols; ++k)
        if (m[r][k]) m[i][k] = f.add(m[i][k], f.mul(factor, m[r][k]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline std::size_t rank(const FiniteField& f, Matrix m) { return rref_inplace(f, m).size(); }

/// Basis of {x : m x = 0} for a matrix with `cols` columns, in RREF.
inline Matrix null_space(const FiniteField& f, Matrix m, std::size_t cols) {
  const auto piv = rref_inplace(f, m);
  std::vector<char> is_pivot(cols, 0);
  for (int p : piv) is_pivot[p] = 1;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(m[r][free]);
    basis.push_back(std::move(v));
  }
  rref_inplace(f, basis);
  return basis;
}

inline Elem dot(const FiniteField& f, const Vec& a, const Vec& b) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

inline Vec mat_vec(const FiniteField& f, const Matrix& m, const Vec& v) {
  Vec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(f, m[i], v);
  return out;
}

inline Matrix mat_mul(const FiniteField& f, const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  Matrix out(n, Vec(c, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t l = 0; l < c; ++l)
        if (b[j][l]) out[i][l] = f.add(out[i][l], f.mul(a[i][j], b[j][l]));
    }
  return out;
}

inline Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

/// Inverse of a square matrix, or empty if singular.
inline Matrix inverse(const FiniteField& f, const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n, Vec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  const auto piv = rref_inplace(f, aug);
  if (piv.size() < n || piv[n - 1] != static_cast<int>(n - 1)) return {};
  Matrix inv(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Coefficients c with sum_i c_i rows[i] = v, or empty when v is outside the row space.
/// `rows` must be linearly independent.
inline Vec solve_combination(const FiniteField& f, const Matrix& rows, const Vec& v) {
  const std::size_t k = rows.size(), len = v.size();
  Matrix sys(len, Vec(k + 1, 0));
  for (std::size_t c = 0; c < len; ++c) {
    for (std::size_t r = 0; r < k; ++r) sys[c][r] = rows[r][c];
    sys[c][k] = v[c];
  }
  const auto piv = rref_inplace(f, sys);
  if (!piv.empty() && piv.back() == static_cast<int>(k)) return {};
  Vec out(k, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) out[piv[r]] = sys[r][k];
  return out;
}

/// Scales v so that its first nonzero entry is 1. Returns false for the zero vector.
inline bool normalize(const FiniteField& f, Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] != 1) {
      const Elem s = f.inv(v[i]);
      for (std::size_t k = i; k < v.size(); ++k) v[k] = f.mul(v[k], s);
    }
    return true;
  }
  return false;
}

inline bool is_zero(const Vec& v) {
  for (Elem x : v)
    if (x) return false;
  return true;
}

}  // namespace tgq
