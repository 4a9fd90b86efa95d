#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adelic/interval.hpp"
#include "adelic/number_field.hpp"

namespace adelic {

/// Width below which comparisons give up.
inline Rational unresolved_width() { return Rational(Integer(1), Integer("1000000000000000000000000000000")); }

/// A nonnegative real of the form
///
///   coeff * prod_v sigma_v(w_v) / sqrt(radicand)
///
/// with coeff, radicand rational and each sigma_v(w_v) >= 0. Products that
/// collapse to one embedded element (rational factors, a common factor at
/// every place, the nontrivial automorphism of a quadratic field) are folded
/// on construction so that comparisons stay exact.
class PositiveReal {
 public:
  PositiveReal() = default;

  static PositiveReal rational(const Rational& q) {
    if (sgn(q) < 0) throw DomainError("negative value for a positive real");
    PositiveReal out;
    out.coeff_ = q;
    return out;
  }

  /// coeff * prod_v sigma_v(w[v]); w has one entry per real place.
  static PositiveReal place_product(const Rational& coeff, std::vector<FieldElement> w) {
    PositiveReal out = rational(coeff);
    if (w.empty()) return out;
    for (std::size_t v = 0; v < w.size(); ++v) {
      if (sign_at(w[v], static_cast<int>(v)) < 0) throw DomainError("negative place factor");
    }
    out.factors_ = std::move(w);
    out.fold();
    return out;
  }

  PositiveReal scaled(const Rational& q) const {
    if (sgn(q) < 0) throw DomainError("negative scale for a positive real");
    PositiveReal out = *this;
    out.coeff_ *= q;
    if (sgn(out.coeff_) == 0) out = rational(Rational(0));
    return out;
  }

  /// This value divided by sqrt(q), q > 0.
  PositiveReal divided_by_sqrt(const Rational& q) const {
    if (sgn(q) <= 0) throw DomainError("square root of a nonpositive radicand");
    PositiveReal out = *this;
    out.radicand_ *= q;
    Rational root;
    if (rational_sqrt(out.radicand_, root)) {
      out.coeff_ /= root;
      out.radicand_ = 1;
    }
    return out;
  }

  const Rational& coeff() const { return coeff_; }
  const Rational& radicand() const { return radicand_; }
  bool has_sqrt() const { return radicand_ != 1; }

  /// The value as a rational, if it is one.
  std::optional<Rational> exact() const {
    if (factors_.empty() && !single_) return radicand_ == 1 ? std::optional<Rational>(coeff_) : std::nullopt;
    if (!single_) return std::nullopt;
    FieldElement sq = single_->first * single_->first;
    if (!sq.is_rational()) return std::nullopt;
    Rational root;
    if (!rational_sqrt(coeff_ * coeff_ * sq.rational_value() / radicand_, root)) return std::nullopt;
    return root;
  }

  /// The value without the 1/sqrt(radicand) factor, when rational.
  std::optional<Rational> exact_numerator() const {
    if (factors_.empty() && !single_) return coeff_;
    return std::nullopt;
  }

  /// Enclosure of width at most `width`.
  Interval enclosure(const Rational& width) const {
    if (auto q = exact()) return Interval(*q);
    Rational step = width;
    while (true) {
      Interval value = Interval(coeff_);
      if (single_) {
        value = value * embed(single_->first, single_->second, step);
      } else {
        for (std::size_t v = 0; v < factors_.size(); ++v) value = value * embed(factors_[v], static_cast<int>(v), step);
      }
      if (radicand_ != 1) value = value / sqrt_enclosure(radicand_, step);
      if (value.width() <= width) return value;
      step /= 1024;
    }
  }

  /// Sign of (value - q).
  int compare(const Rational& q) const {
    if (sgn(q) < 0) return 1;
    if (auto e = exact()) return cmp(*e, q);
    // value >= 0 and q >= 0: compare squares
    Rational rhs = q * q * radicand_;
    if (factors_.empty() && !single_) return cmp(coeff_ * coeff_, rhs);
    if (single_) {
      const auto& [u, place] = *single_;
      return sign_at(coeff_ * coeff_ * (u * u) - u.field().from_rational(rhs), place);
    }
    Rational width = Rational(1, 1024);
    while (width >= unresolved_width()) {
      Interval iv = enclosure(width);
      if (iv.lo() > q) return 1;
      if (iv.hi() < q) return -1;
      width /= 1024;
    }
    throw UnresolvedError("comparison did not resolve at width 1e-30");
  }

  /// Exact rational when available, else a decimal enclosure.
  std::string str(const Rational& width = Rational(1, 1000000)) const {
    if (auto q = exact()) return to_string(*q);
    std::ostringstream os;
    os << std::setprecision(12);
    if (auto num = exact_numerator()) os << to_string(*num) << "/sqrt(" << to_string(radicand_) << ") ";
    Interval iv = enclosure(width);
    os << "in [" << iv.lo().get_d() << ", " << iv.hi().get_d() << "]";
    return os.str();
  }

 private:
  void fold() {
    const NumberField k = factors_[0].field();
    bool all_rational = true;
    for (const auto& w : factors_) all_rational = all_rational && w.is_rational();
    if (all_rational) {
      for (const auto& w : factors_) coeff_ *= w.rational_value();
      factors_.clear();
      return;
    }
    bool all_equal = true;
    for (const auto& w : factors_) all_equal = all_equal && w == factors_[0];
    if (all_equal) {
      coeff_ *= abs(norm(factors_[0]));
      factors_.clear();
      return;
    }
    if (k.degree() == 2) {
      // sigma_1(x) = sigma_0(tau(x)) with tau(theta) = -theta - a1
      const auto& c = factors_[1].coords();
      Rational a1 = k.min_poly().coeff(1);
      FieldElement conj = k.element({c[0] - a1 * c[1], -c[1]});
      FieldElement u = factors_[0] * conj;
      factors_.clear();
      if (u.is_rational()) {
        coeff_ *= u.rational_value();
      } else {
        single_ = std::make_pair(u, 0);
      }
    }
  }

  Rational coeff_{0};
  std::vector<FieldElement> factors_;
  std::optional<std::pair<FieldElement, int>> single_;
  Rational radicand_{1};
};

}  // namespace adelic
