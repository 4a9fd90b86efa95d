#pragma once

#include <algorithm>
#include <optional>
#include <ostream>

#include "adelic/rational.hpp"

namespace adelic {

/// Closed interval [lo, hi] with rational endpoints, guaranteed to contain
/// the real number it stands for. All operations enclose the exact result.
class Interval {
 public:
  Interval() = default;
  explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
  Interval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
    if (hi_ < lo_) throw Error("interval with lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  Rational magnitude() const { return std::max(Rational(abs(lo_)), Rational(abs(hi_))); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool intersects(const Interval& other) const { return !(hi_ < other.lo_ || other.hi_ < lo_); }

  /// Sign of every member, if it is the same for all of them.
  std::optional<int> sign() const {
    if (sgn(lo_) > 0) return 1;
    if (sgn(hi_) < 0) return -1;
    if (sgn(lo_) == 0 && sgn(hi_) == 0) return 0;
    return std::nullopt;
  }

  /// Widen outward to multiples of 2^-bits; keeps endpoint sizes bounded.
  Interval rounded_out(unsigned long bits) const { return {round_down(lo_, bits), round_up(hi_, bits)}; }

  Interval& operator+=(const Interval& o) {
    lo_ += o.lo_;
    hi_ += o.hi_;
    return *this;
  }
  Interval& operator-=(const Interval& o) {
    Rational lo = lo_ - o.hi_;
    hi_ -= o.lo_;
    lo_ = lo;
    return *this;
  }

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo_ * b.lo_;
    Rational p2 = a.lo_ * b.hi_;
    Rational p3 = a.hi_ * b.lo_;
    Rational p4 = a.hi_ * b.hi_;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }
  friend Interval operator*(const Rational& s, const Interval& a) {
    if (sgn(s) >= 0) return {s * a.lo_, s * a.hi_};
    return {s * a.hi_, s * a.lo_};
  }
  friend Interval operator*(const Interval& a, const Rational& s) { return s * a; }

  /// Division by an interval that excludes zero.
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (!b.sign() || *b.sign() == 0) throw Error("interval division by a range containing zero");
    Rational inv_lo = 1 / b.hi_;
    Rational inv_hi = 1 / b.lo_;
    return a * Interval(inv_lo, inv_hi);
  }

  friend Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
  }

  friend Interval abs(const Interval& a) {
    if (sgn(a.lo_) >= 0) return a;
    if (sgn(a.hi_) <= 0) return -a;
    return {Rational(0), std::max(Rational(-a.lo_), a.hi_)};
  }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

  friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << '[' << to_string(iv.lo_) << ", " << to_string(iv.hi_) << ']';
  }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

inline Interval pow(const Interval& base, unsigned exponent) {
  // even powers are nonnegative even when base straddles zero
  Interval factor = exponent % 2 == 0 ? abs(base) : base;
  Interval out(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) out = out * factor;
  return out;
}

/// Enclosure of sqrt(q) for q >= 0, of width at most `width`.
inline Interval sqrt_enclosure(const Rational& q, const Rational& width) {
  if (sgn(q) < 0) throw Error("sqrt of negative rational");
  Rational root;
  if (rational_sqrt(q, root)) return Interval(root);
  Rational lo(0);
  Rational hi = std::max(Rational(1), q);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (mid * mid <= q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace adelic
