#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "adelic/linalg.hpp"
#include "adelic/number_field.hpp"

namespace adelic {

/// A point of K^n.
using Point = std::vector<FieldElement>;

inline Point zero_point(const NumberField& k, int n) { return Point(static_cast<std::size_t>(n), k.zero()); }

/// i-th standard basis vector of K^n.
inline Point unit_point(const NumberField& k, int n, int i) {
  Point p = zero_point(k, n);
  p[static_cast<std::size_t>(i)] = k.one();
  return p;
}

inline Point operator+(const Point& a, const Point& b) {
  Point out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline Point operator-(const Point& a, const Point& b) {
  Point out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

inline Point operator-(const Point& a) {
  Point out = a;
  for (auto& x : out) x = -x;
  return out;
}

inline Point operator*(const FieldElement& s, const Point& a) {
  Point out = a;
  for (auto& x : out) x = s * x;
  return out;
}

inline Point operator*(const Rational& s, const Point& a) {
  Point out = a;
  for (auto& x : out) x *= s;
  return out;
}

inline FieldElement dot(const Point& a, const Point& b) {
  FieldElement acc = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline bool is_zero(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const FieldElement& x) { return x.is_zero(); });
}

/// Rational coordinates in Q^{nd}: component i, power j at index i*d + j.
inline std::vector<Rational> flatten(const Point& p) {
  std::vector<Rational> out;
  for (const auto& x : p) out.insert(out.end(), x.coords().begin(), x.coords().end());
  return out;
}

inline Point unflatten(const NumberField& k, int n, const std::vector<Rational>& coords) {
  Point p;
  std::size_t d = static_cast<std::size_t>(k.degree());
  for (int i = 0; i < n; ++i) {
    auto first = coords.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * d);
    p.push_back(k.element(std::vector<Rational>(first, first + static_cast<std::ptrdiff_t>(d))));
  }
  return p;
}

/// Lexicographic order on the rational coordinate vectors.
inline bool point_less(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i].coords();
    const auto& y = b[i].coords();
    for (std::size_t j = 0; j < x.size(); ++j) {
      int c = cmp(x[j], y[j]);
      if (c != 0) return c < 0;
    }
  }
  return false;
}

inline void sort_points(std::vector<Point>& points) {
  std::sort(points.begin(), points.end(), point_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

/// Affine dimension over K of a point set; -1 when empty.
inline int dim_over_K(const std::vector<Point>& points) {
  if (points.empty()) return -1;
  Matrix<FieldElement> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(std::move(diffs)));
}

/// Affine dimension over Q of the rational coordinate vectors; equals the
/// real affine dimension of the embedded points in R^{nd}. -1 when empty.
inline int dim_over_Q(const std::vector<Point>& points) {
  if (points.empty()) return -1;
  Matrix<Rational> diffs;
  auto base = flatten(points[0]);
  for (std::size_t i = 1; i < points.size(); ++i) {
    auto row = flatten(points[i]);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= base[j];
    diffs.push_back(std::move(row));
  }
  return static_cast<int>(rank(std::move(diffs)));
}

}  // namespace adelic
