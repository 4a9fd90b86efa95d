#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "adelic/interval.hpp"
#include "adelic/linalg.hpp"
#include "adelic/polynomial.hpp"
#include "adelic/rational.hpp"

namespace adelic {

namespace detail {

/// Bits to which every real root is refined when the field is built.
inline constexpr unsigned long kRootBits = 128;

struct FieldData {
  std::vector<Integer> coeffs;  // monic minimal polynomial, constant term first
  Polynomial min_poly;
  int degree = 0;
  int real_places = 0;
  int complex_pairs = 0;
  Integer discriminant;
  bool class_number_one = true;
  bool irreducibility_verified = false;
  std::vector<Interval> isolating;                       // per real place, decreasing roots
  std::vector<Interval> roots;                           // refined to kRootBits
  std::vector<std::vector<Interval>> powers;             // [place][j] encloses theta^j
  std::vector<std::vector<double>> power_doubles;        // [place][j] nearest double
  std::vector<std::vector<Rational>> reduction;          // theta^{d+k}, k = 0..d-2
  std::vector<Rational> power_traces;                    // Tr(theta^k), k = 0..2d-2
};

inline Interval bisect_root(const Polynomial& f, Interval iv, const Rational& width) {
  if (iv.is_point()) return iv;
  Rational lo = iv.lo();
  Rational hi = iv.hi();
  int s_lo = sgn(f(lo));
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = sgn(f(mid));
    if (s == 0) return Interval(mid);
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

inline std::vector<Interval> power_enclosures(const Interval& root, int degree) {
  std::vector<Interval> p;
  p.reserve(static_cast<std::size_t>(degree));
  for (int j = 0; j < degree; ++j) p.push_back(pow(root, static_cast<unsigned>(j)));
  return p;
}

}  // namespace detail

class FieldElement;

/// A monogenic number field K = Q(theta), theta a root of a monic integer
/// polynomial. Real places are numbered 0..r-1 in decreasing order of the
/// corresponding real root of the minimal polynomial.
class NumberField {
 public:
  struct Options {
    bool class_number_one = true;
    /// Accept degree > 4 without an exact irreducibility check.
    bool assume_irreducible = false;
  };

  NumberField() = default;

  static NumberField create(const std::vector<Integer>& coeffs, const Options& options);
  static NumberField create(const std::vector<Integer>& coeffs) { return create(coeffs, Options{}); }
  static NumberField rationals() { return create({Integer(-1), Integer(1)}); }

  bool valid() const { return data_ != nullptr; }
  int degree() const { return data_->degree; }
  int real_places() const { return data_->real_places; }
  int complex_pairs() const { return data_->complex_pairs; }
  bool totally_real() const { return data_->complex_pairs == 0; }
  const Integer& discriminant() const { return data_->discriminant; }
  const Polynomial& min_poly() const { return data_->min_poly; }
  const std::vector<Integer>& min_poly_coeffs() const { return data_->coeffs; }
  bool class_number_one() const { return data_->class_number_one; }
  bool irreducibility_verified() const { return data_->irreducibility_verified; }
  const Interval& root_isolation(int place) const { return data_->isolating.at(static_cast<std::size_t>(place)); }

  /// Enclosure of the real root belonging to `place`, of width <= width.
  /// Successive calls with decreasing width return nested intervals.
  Interval refine_root(int place, const Rational& width) const {
    check_place(place);
    const Interval& base = data_->roots[static_cast<std::size_t>(place)];
    if (base.width() <= width) return base;
    return detail::bisect_root(data_->min_poly, base, width);
  }

  FieldElement element(std::vector<Rational> coords) const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement theta() const;

  void check_place(int place) const {
    if (place < 0 || place >= data_->real_places) throw DomainError("real place index out of range");
  }

  const detail::FieldData& data() const { return *data_; }

  friend bool operator==(const NumberField& a, const NumberField& b) {
    return a.data_ == b.data_ || (a.data_ && b.data_ && a.data_->coeffs == b.data_->coeffs);
  }

 private:
  explicit NumberField(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  friend class FieldElement;

  std::shared_ptr<const detail::FieldData> data_;
};

/// Element of K in the power basis 1, theta, ..., theta^{d-1}.
class FieldElement {
 public:
  FieldElement() = default;

  NumberField field() const { return NumberField(field_); }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& coord(std::size_t j) const { return coords_[j]; }
  int degree() const { return static_cast<int>(coords_.size()); }

  bool is_zero() const {
    for (const auto& c : coords_) {
      if (sgn(c) != 0) return false;
    }
    return true;
  }
  bool is_rational() const {
    for (std::size_t j = 1; j < coords_.size(); ++j) {
      if (sgn(coords_[j]) != 0) return false;
    }
    return true;
  }
  /// Value of a rational element; only meaningful when is_rational().
  const Rational& rational_value() const { return coords_[0]; }

  FieldElement& operator+=(const FieldElement& o) {
    same_field(o);
    for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] += o.coords_[j];
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    same_field(o);
    for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] -= o.coords_[j];
    return *this;
  }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator*=(const Rational& q) {
    for (auto& c : coords_) c *= q;
    return *this;
  }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator-(FieldElement a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend FieldElement operator*(FieldElement a, const Rational& q) { return a *= q; }
  friend FieldElement operator*(const Rational& q, FieldElement a) { return a *= q; }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.same_field(b);
    const auto& data = *a.field_;
    std::size_t d = a.coords_.size();
    if (d == 1) return a.with_coords({a.coords_[0] * b.coords_[0]});
    std::vector<Rational> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(a.coords_[i]) == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coords_[i] * b.coords_[j];
    }
    std::vector<Rational> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t k = d; k < 2 * d - 1; ++k) {
      if (sgn(prod[k]) == 0) continue;
      const auto& red = data.reduction[k - d];
      for (std::size_t j = 0; j < d; ++j) out[j] += prod[k] * red[j];
    }
    return a.with_coords(std::move(out));
  }

  FieldElement inverse() const;

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.coords_ == b.coords_; }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    os << '(';
    for (std::size_t j = 0; j < x.coords_.size(); ++j) {
      if (j > 0) os << ", ";
      os << to_string(x.coords_[j]);
    }
    return os << ')';
  }

 private:
  friend class NumberField;
  FieldElement(std::shared_ptr<const detail::FieldData> field, std::vector<Rational> coords)
      : field_(std::move(field)), coords_(std::move(coords)) {}

  FieldElement with_coords(std::vector<Rational> coords) const { return FieldElement(field_, std::move(coords)); }

  void same_field(const FieldElement& o) const {
    if (coords_.size() != o.coords_.size()) throw Error("field elements from different fields");
  }

  std::shared_ptr<const detail::FieldData> field_;
  std::vector<Rational> coords_;
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline FieldElement zero_like(const FieldElement& x) { return x.field().zero(); }
inline FieldElement one_like(const FieldElement& x) { return x.field().one(); }

inline FieldElement NumberField::element(std::vector<Rational> coords) const {
  if (static_cast<int>(coords.size()) != data_->degree) throw Error("element has wrong number of coordinates");
  for (auto& c : coords) c.canonicalize();
  return FieldElement(data_, std::move(coords));
}

inline FieldElement NumberField::from_rational(const Rational& q) const {
  std::vector<Rational> c(static_cast<std::size_t>(data_->degree));
  c[0] = q;
  return FieldElement(data_, std::move(c));
}

inline FieldElement NumberField::zero() const { return from_rational(Rational(0)); }
inline FieldElement NumberField::one() const { return from_rational(Rational(1)); }

inline FieldElement NumberField::theta() const {
  std::vector<Rational> c(static_cast<std::size_t>(data_->degree));
  if (data_->degree == 1) {
    c[0] = -Rational(data_->coeffs[0]);
  } else {
    c[1] = 1;
  }
  return FieldElement(data_, std::move(c));
}

/// Matrix of multiplication by x in the power basis; column j holds x * theta^j.
inline Matrix<Rational> multiplication_matrix(const FieldElement& x) {
  std::size_t d = static_cast<std::size_t>(x.degree());
  Matrix<Rational> m(d, std::vector<Rational>(d));
  FieldElement col = x;
  FieldElement theta = x.field().theta();
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coord(i);
    if (j + 1 < d) col = col * theta;
  }
  return m;
}

inline Rational norm(const FieldElement& x) { return determinant(multiplication_matrix(x)); }

inline Rational trace(const FieldElement& x) {
  const auto& traces = x.field().data().power_traces;
  Rational t(0);
  for (std::size_t j = 0; j < x.coords().size(); ++j) t += x.coord(j) * traces[j];
  return t;
}

/// Norm through the resultant Res(f, g) where x = g(theta); independent of
/// the multiplication-matrix route.
inline Rational resultant_norm(const FieldElement& x) {
  Polynomial g(x.coords());
  if (g.is_zero()) return Rational(0);
  return resultant(x.field().min_poly(), g);
}

inline FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  if (coords_.size() == 1) return with_coords({1 / coords_[0]});
  std::vector<Rational> e(coords_.size());
  e[0] = 1;
  auto sol = solve(multiplication_matrix(*this), e);
  if (!sol) throw Error("singular multiplication matrix");
  return with_coords(std::move(*sol));
}

namespace detail {

inline Interval evaluate(const std::vector<Rational>& coords, const std::vector<Interval>& powers) {
  Interval acc(coords[0]);
  for (std::size_t j = 1; j < coords.size(); ++j) {
    if (sgn(coords[j]) != 0) acc += coords[j] * powers[j];
  }
  return acc;
}

/// Certified floating-point sign of sigma_place(x), or 0 when undecided.
inline int filtered_sign(const FieldElement& x, int place) {
  const auto& p = x.field().data().power_doubles[static_cast<std::size_t>(place)];
  double sum = 0;
  double mag = 0;
  for (std::size_t j = 0; j < x.coords().size(); ++j) {
    double c = x.coord(j).get_d();
    if (!std::isfinite(c) || std::abs(c) > 1e280) return 0;
    double t = c * p[j];
    sum += t;
    mag += std::abs(t);
  }
  if (mag < 1e-250) return 0;
  // relative error of each term is below (d + 4) * 2^-53; doubled for margin
  double err = mag * static_cast<double>(x.coords().size() + 4) * 2.3e-16 + 1e-300;
  if (sum > err) return 1;
  if (sum < -err) return -1;
  return 0;
}

}  // namespace detail

/// Certified enclosure of sigma_place(x) of width at most `width`.
inline Interval embed(const FieldElement& x, int place, const Rational& width) {
  NumberField k = x.field();
  k.check_place(place);
  if (x.is_rational()) return Interval(x.rational_value());
  const auto& data = k.data();
  Interval out = detail::evaluate(x.coords(), data.powers[static_cast<std::size_t>(place)]);
  if (out.width() <= width) return out;
  Rational root_width = data.roots[static_cast<std::size_t>(place)].width();
  while (true) {
    root_width /= 1024;
    Interval root = k.refine_root(place, root_width);
    out = detail::evaluate(x.coords(), detail::power_enclosures(root, k.degree()));
    if (out.width() <= width) return out;
  }
}

/// Exact sign of sigma_place(x).
inline int sign_at(const FieldElement& x, int place) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.rational_value());
  NumberField k = x.field();
  k.check_place(place);
  if (int s = detail::filtered_sign(x, place); s != 0) return s;
  const auto& data = k.data();
  Interval e = detail::evaluate(x.coords(), data.powers[static_cast<std::size_t>(place)]);
  if (auto s = e.sign(); s && *s != 0) return *s;
  if (k.totally_real()) {
    // |sigma_place(x)| >= |N(x)| / prod_{j != place} |sigma_j(x)|
    Rational bound = abs(norm(x));
    for (int j = 0; j < k.real_places(); ++j) {
      if (j == place) continue;
      bound /= detail::evaluate(x.coords(), data.powers[static_cast<std::size_t>(j)]).magnitude();
    }
    Interval tight = embed(x, place, bound / 2);
    if (auto s = tight.sign(); s && *s != 0) return *s;
    throw Error("sign certificate failed");
  }
  Rational width = e.width();
  while (true) {
    width /= 1024;
    Interval tight = embed(x, place, width);
    if (auto s = tight.sign(); s && *s != 0) return *s;
  }
}

/// Checks the product formula for x != 0: the archimedean product
/// prod_v |sigma_v(x)|^{d_v} equals |N(x)|, which the non-archimedean side
/// cancels. Both norms are computed by independent exact routes.
inline bool product_formula_check(const FieldElement& x) {
  if (x.is_zero()) throw DomainError("product formula needs a nonzero element");
  Rational via_matrix = abs(norm(x));
  Rational via_resultant = abs(resultant_norm(x));
  if (via_matrix != via_resultant) return false;
  if (!x.field().totally_real()) return true;
  // the archimedean product must bracket the exact norm
  Interval prod(Rational(1));
  for (int v = 0; v < x.field().real_places(); ++v) prod = prod * abs(embed(x, v, Rational(1, 1000000)));
  return prod.contains(via_matrix);
}

namespace detail {

inline std::optional<Integer> integer_in(const Polynomial& f, const Interval& iv) {
  for (Integer z = ceil_of(iv.lo()); z <= floor_of(iv.hi()); ++z) {
    if (sgn(f(Rational(z))) == 0) return z;
  }
  return std::nullopt;
}

inline bool has_integer_root(const Polynomial& f, const std::vector<Interval>& isolating) {
  for (const auto& iv : isolating) {
    Interval tight = bisect_root(f, iv, Rational(1, 4));
    if (integer_in(f, tight)) return true;
  }
  return false;
}

inline std::vector<Integer> divisors(const Integer& n) {
  Integer m = abs(n);
  if (m > Integer("1000000000000")) throw DomainError("constant term too large for the exact irreducibility check");
  std::vector<Integer> out;
  for (Integer i = 1; i * i <= m; ++i) {
    if (m % i == 0) {
      out.push_back(i);
      if (i * i != m) out.push_back(m / i);
    }
  }
  return out;
}

// x^4 + c3 x^3 + c2 x^2 + c1 x + c0 = (x^2 + p x + q)(x^2 + r x + s) over Z?
inline bool has_quadratic_factor(const std::vector<Integer>& c) {
  const Integer& c0 = c[0];
  const Integer& c1 = c[1];
  const Integer& c2 = c[2];
  const Integer& c3 = c[3];
  for (const Integer& d : divisors(c0)) {
    for (int sign : {1, -1}) {
      Integer q = d * sign;
      Integer s = c0 / q;
      std::vector<Integer> ps;
      if (s != q) {
        Integer num = c1 - q * c3;
        Integer den = s - q;
        if (num % den != 0) continue;
        ps.push_back(num / den);
      } else {
        Integer disc = c3 * c3 - 4 * (c2 - 2 * q);
        if (sgn(disc) < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0) continue;
        Integer root = sqrt(disc);
        for (const Integer& t : {Integer(c3 + root), Integer(c3 - root)}) {
          if (t % 2 == 0) ps.push_back(t / 2);
        }
      }
      for (const Integer& p : ps) {
        Integer r = c3 - p;
        if (q + s + p * r == c2 && p * s + q * r == c1) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

inline NumberField NumberField::create(const std::vector<Integer>& coeffs, const Options& options) {
  if (coeffs.size() < 2) throw DomainError("minimal polynomial must have degree >= 1");
  if (coeffs.back() != 1) throw DomainError("minimal polynomial must be monic");
  auto data = std::make_shared<detail::FieldData>();
  data->coeffs = coeffs;
  data->min_poly = Polynomial::from_integers(coeffs);
  data->degree = data->min_poly.degree();
  data->class_number_one = options.class_number_one;
  const int d = data->degree;
  const Polynomial& f = data->min_poly;

  if (!is_squarefree(f)) throw DomainError("minimal polynomial is not squarefree");
  data->isolating = isolate_real_roots(f);
  data->real_places = static_cast<int>(data->isolating.size());
  data->complex_pairs = (d - data->real_places) / 2;

  if (d <= 4) {
    bool reducible = d >= 2 && detail::has_integer_root(f, data->isolating);
    if (!reducible && d == 4) reducible = detail::has_quadratic_factor(coeffs);
    if (reducible) throw DomainError("minimal polynomial is reducible");
    data->irreducibility_verified = true;
  } else if (!options.assume_irreducible) {
    throw DomainError("irreducibility is only checked for degree <= 4; pass the override to accept");
  }

  data->discriminant = floor_of(adelic::discriminant(f));

  for (const auto& iv : data->isolating) {
    Interval root = detail::bisect_root(f, iv, dyadic(-static_cast<long>(detail::kRootBits)));
    data->roots.push_back(root);
    data->powers.push_back(detail::power_enclosures(root, d));
    std::vector<double> approx;
    for (const auto& p : data->powers.back()) approx.push_back(p.midpoint().get_d());
    data->power_doubles.push_back(std::move(approx));
  }

  // theta^d = -sum c_j theta^j, then successive shifts
  std::vector<Rational> cur(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) cur[static_cast<std::size_t>(j)] = -Rational(coeffs[static_cast<std::size_t>(j)]);
  for (int k = 0; k + 1 < d; ++k) {
    data->reduction.push_back(cur);
    std::vector<Rational> next(static_cast<std::size_t>(d));
    Rational top = cur.back();
    for (int j = d - 1; j >= 1; --j) next[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)];
    for (int j = 0; j < d; ++j) next[static_cast<std::size_t>(j)] -= top * Rational(coeffs[static_cast<std::size_t>(j)]);
    cur = std::move(next);
  }

  NumberField field(data);
  // traces of theta^k straight from multiplication matrices
  FieldElement power = field.one();
  FieldElement theta = field.theta();
  std::vector<Rational> traces;
  for (int k = 0; k <= 2 * d - 2; ++k) {
    Matrix<Rational> m = multiplication_matrix(power);
    Rational t(0);
    for (int i = 0; i < d; ++i) t += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    traces.push_back(t);
    power = power * theta;
  }
  data->power_traces = std::move(traces);
  return field;
}

}  // namespace adelic
