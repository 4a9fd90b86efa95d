#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "adelic/rational.hpp"

namespace adelic {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }

namespace detail {

// Row-reduces m in place over a field; returns the pivot columns and the
// sign of the row permutation applied.
template <class T>
std::pair<std::vector<std::size_t>, int> row_reduce(Matrix<T>& m, bool full) {
  std::vector<std::size_t> pivots;
  int sign = 1;
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pick = row;
    while (pick < rows && is_zero(m[pick][col])) ++pick;
    if (pick == rows) continue;
    if (pick != row) {
      std::swap(m[pick], m[row]);
      sign = -sign;
    }
    const T inv = one_like(m[row][col]) / m[row][col];
    for (std::size_t r = full ? 0 : row + 1; r < rows; ++r) {
      if (r == row || is_zero(m[r][col])) continue;
      const T factor = m[r][col] * inv;
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return {pivots, sign};
}

}  // namespace detail

/// Determinant of a nonempty square matrix over a field.
template <class T>
T determinant(Matrix<T> m) {
  if (m.empty()) throw Error("determinant of empty matrix");
  auto [pivots, sign] = detail::row_reduce(m, false);
  if (pivots.size() < m.size()) return zero_like(m[0][0]);
  T det = m[0][0];
  for (std::size_t i = 1; i < m.size(); ++i) det = det * m[i][i];
  return sign < 0 ? zero_like(det) - det : det;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  if (m.empty()) return 0;
  return detail::row_reduce(m, false).first.size();
}

/// Solves a * x = b for square nonsingular a; nullopt when singular.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  std::size_t n = a.size();
  Matrix<T> aug = a;
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(b[i]);
  auto [pivots, sign] = detail::row_reduce(aug, true);
  (void)sign;
  if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
  std::vector<T> x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) x.push_back(aug[i][n] / aug[i][i]);
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  std::size_t n = a.size();
  Matrix<T> aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? one_like(a[0][0]) : zero_like(a[0][0]));
  }
  auto [pivots, sign] = detail::row_reduce(aug, true);
  (void)sign;
  if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
  Matrix<T> inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const T scale = one_like(aug[i][i]) / aug[i][i];
    for (std::size_t j = 0; j < n; ++j) inv[i].push_back(aug[i][n + j] * scale);
  }
  return inv;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  if (m.empty()) return {};
  Matrix<T> t(m[0].size(), std::vector<T>(m.size(), zero_like(m[0][0])));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

/// Row Hermite normal form of an integer matrix: nonzero rows only, pivot
/// columns strictly increasing, pivots positive, entries above each pivot
/// reduced into [0, pivot).
inline Matrix<Integer> hermite_normal_form(Matrix<Integer> m) {
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    // Euclid on the column until one nonzero entry remains at or below `row`.
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = row; r < rows; ++r) {
        if (sgn(m[r][col]) != 0 && (best == rows || abs(m[r][col]) < abs(m[best][col]))) best = r;
      }
      if (best == rows) break;
      std::swap(m[row], m[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < rows; ++r) {
        if (sgn(m[r][col]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
        for (std::size_t c = col; c < cols; ++c) m[r][c] -= q * m[row][c];
        if (sgn(m[r][col]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(m[row][col]) == 0) continue;
    if (sgn(m[row][col]) < 0) {
      for (std::size_t c = col; c < cols; ++c) m[row][c] = -m[row][c];
    }
    for (std::size_t r = 0; r < row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= q * m[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  m.resize(row);
  return m;
}

}  // namespace adelic
