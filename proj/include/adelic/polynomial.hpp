#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "adelic/interval.hpp"
#include "adelic/linalg.hpp"
#include "adelic/rational.hpp"

namespace adelic {

/// Dense univariate polynomial over Q, constant term first. The zero
/// polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial from_integers(const std::vector<Integer>& coeffs) {
    std::vector<Rational> q;
    q.reserve(coeffs.size());
    for (const auto& c : coeffs) q.emplace_back(c);
    return Polynomial(std::move(q));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, with -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Interval operator()(const Interval& x) const {
    Interval acc{Rational(0)};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Interval(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> c = coeffs_;
    Rational lc = leading();
    for (auto& x : c) x /= lc;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& p) {
    std::vector<Rational> c = p.coeffs_;
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
  }

  /// Quotient and remainder of Euclidean division by a nonzero divisor.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs_;
    int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
    for (int k = a.degree() - db; k >= 0; --k) {
      Rational f = rem[static_cast<std::size_t>(k + db)] / b.leading();
      quot[static_cast<std::size_t>(k)] = f;
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeffs_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const Polynomial& p) { return gcd(p, p.derivative()).degree() == 0; }

/// Sturm sequence p, p', -rem(p, p'), ...
inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

namespace detail {

inline int sign_variations(const std::vector<Polynomial>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

/// Number of distinct real roots in (a, b].
inline int count_roots(const std::vector<Polynomial>& sturm, const Rational& a, const Rational& b) {
  return detail::sign_variations(sturm, a) - detail::sign_variations(sturm, b);
}

/// Cauchy bound: every complex root has modulus below the returned value.
inline Rational root_bound(const Polynomial& p) {
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(static_cast<std::size_t>(i)) / p.leading())));
  return m + 1;
}

/// Disjoint isolating intervals for the real roots of a squarefree
/// polynomial, sorted in decreasing order of the root. Endpoints of every
/// interval are not roots unless the interval is a single point.
inline std::vector<Interval> isolate_real_roots(const Polynomial& p) {
  std::vector<Interval> out;
  if (p.degree() < 1) return out;
  auto sturm = sturm_sequence(p);
  Rational bound = root_bound(p);
  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int n = count_roots(sturm, a, b);
    if (n == 0) continue;
    if (n == 1) {
      if (sgn(p(b)) == 0) {
        out.emplace_back(b);
      } else {
        // (a, b] holds one root and p(b) != 0; p(a) != 0 by construction
        out.emplace_back(a, b);
      }
      continue;
    }
    Rational mid = (a + b) / 2;
    if (sgn(p(mid)) == 0) {
      out.emplace_back(mid);
      // split around the exact root, keeping it out of both halves
      Rational eps = (b - a) / 4;
      while (count_roots(sturm, mid - eps, mid + eps) > 1 || sgn(p(mid - eps)) == 0 || sgn(p(mid + eps)) == 0) eps /= 2;
      work.emplace_back(a, mid - eps);
      work.emplace_back(mid + eps, b);
    } else {
      work.emplace_back(a, mid);
      work.emplace_back(mid, b);
    }
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo() > y.lo(); });
  return out;
}

/// Resultant via the Sylvester matrix determinant.
inline Rational resultant(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) return Rational(0);
  int m = f.degree();
  int n = g.degree();
  if (m == 0) return pow(f.leading(), static_cast<unsigned long>(n));
  if (n == 0) return pow(g.leading(), static_cast<unsigned long>(m));
  std::size_t size = static_cast<std::size_t>(m + n);
  Matrix<Rational> s(size, std::vector<Rational>(size));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = f.coeff(static_cast<std::size_t>(m - j));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = g.coeff(static_cast<std::size_t>(n - j));
  }
  return determinant(std::move(s));
}

/// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f).
inline Rational discriminant(const Polynomial& f) {
  int d = f.degree();
  if (d < 1) throw Error("discriminant of a constant");
  if (d == 1) return Rational(1);
  Rational r = resultant(f, f.derivative()) / f.leading();
  return ((d * (d - 1) / 2) % 2 == 0) ? r : Rational(-r);
}

}  // namespace adelic
