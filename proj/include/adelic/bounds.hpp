#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adelic/adelic.hpp"

namespace adelic {

/// Outcome of a dimension hypothesis check.
struct HypothesisCheck {
  std::string statement;  ///< e.g. "dim_K(C ∩ K^n) = n"
  int required = 0;
  int actual = 0;
  bool passed = false;
};

class HypothesisError : public Error {
 public:
  explicit HypothesisError(HypothesisCheck check)
      : Error("hypothesis failed: " + check.statement + " (required " + std::to_string(check.required) + ", got " +
              std::to_string(check.actual) + ")"),
        check_(std::move(check)) {}
  const HypothesisCheck& check() const { return check_; }

 private:
  HypothesisCheck check_;
};

/// lhs <= rhs (or lhs < rhs when strict) with rhs = scaled + offset.
struct BoundReport {
  std::string bound_name;
  Integer lhs;
  PositiveReal scaled;
  Rational offset;
  bool strict = false;
  bool holds = false;
  HypothesisCheck hypothesis;

  std::optional<Rational> rhs_exact() const {
    auto s = scaled.exact();
    if (!s) return std::nullopt;
    return *s + offset;
  }

  Interval rhs_enclosure(const Rational& width) const { return scaled.enclosure(width) + Interval(offset); }

  /// Sign of rhs - lhs, decided exactly or by refinement down to 1e-30.
  int compare() const { return scaled.compare(Rational(lhs) - offset); }

  bool equality() const { return compare() == 0; }
};

namespace detail {

inline BoundReport make_report(std::string name, std::size_t count, PositiveReal scaled, Rational offset, bool strict,
                               HypothesisCheck hyp) {
  BoundReport r;
  r.bound_name = std::move(name);
  r.lhs = Integer(static_cast<unsigned long>(count));
  r.scaled = std::move(scaled);
  r.offset = std::move(offset);
  r.strict = strict;
  r.hypothesis = std::move(hyp);
  int c = r.compare();
  r.holds = strict ? c > 0 : c >= 0;
  return r;
}

inline HypothesisCheck require(std::string statement, int required, int actual, bool exact) {
  HypothesisCheck h{std::move(statement), required, actual, exact ? actual == required : actual >= required};
  if (!h.passed) throw HypothesisError(h);
  return h;
}

inline void require_symmetric(const AdelicPolytope& c) {
  if (!c.symmetric()) throw HypothesisError(HypothesisCheck{"C = -C", 1, 0, false});
}

inline Rational factorial_q(int n) { return Rational(factorial(static_cast<unsigned long>(n))); }

}  // namespace detail

/// L_m(x) = sum_k binom(m, k) x^k / k!.
inline Rational laguerre(int m, const Rational& x) {
  if (m < 0) throw DomainError("Laguerre index must be nonnegative");
  Rational sum(0);
  Rational power(1);
  for (int k = 0; k <= m; ++k) {
    sum += Rational(binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(k))) * power / detail::factorial_q(k);
    power *= x;
  }
  return sum;
}

/// |C ∩ K^n| <= (n!)^d vol_A(C) + n, given dim_K(C ∩ K^n) = n.
inline BoundReport blichfeldt_adelic(const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  require_totally_real(c.field());
  auto pts = lattice_points(c, options);
  auto hyp = detail::require("dim_K(C ∩ K^n) = n", c.n(), dim_over_K(pts), true);
  Rational coef = pow(detail::factorial_q(c.n()), static_cast<unsigned long>(c.field().degree()));
  return detail::make_report("blichfeldt_adelic", pts.size(), adelic_volume(c).scaled(coef), Rational(c.n()), false, hyp);
}

/// Rational body over Q: the polytope P and the lattice with the given basis rows.
inline AdelicPolytope rational_body(const PlacePolytope& p, const Matrix<Rational>& lattice_basis) {
  NumberField q = p.vertices().at(0).at(0).field();
  if (q.degree() != 1) throw DomainError("classical bounds take a polytope over Q");
  return AdelicPolytope::general(OModule::from_rows(q, p.dim(), lattice_basis), {p});
}

/// |C ∩ Λ| <= m! vol(C)/det Λ + m, given dim(C ∩ Λ) = m.
inline BoundReport blichfeldt_classical(const PlacePolytope& p, const Matrix<Rational>& lattice_basis,
                                        const EnumerateOptions& options = {}) {
  AdelicPolytope c = rational_body(p, lattice_basis);
  auto pts = lattice_points(c, options);
  int m = p.dim();
  auto hyp = detail::require("dim(C ∩ Λ) = m", m, dim_over_K(pts), true);
  return detail::make_report("blichfeldt_classical", pts.size(), adelic_volume(c).scaled(detail::factorial_q(m)), Rational(m),
                             false, hyp);
}

/// |C ∩ Λ| <= m!/2^m L_m(2) vol(C)/det Λ for C = -C, given dim(C ∩ Λ) >= m.
inline BoundReport henze_classical(const PlacePolytope& p, const Matrix<Rational>& lattice_basis,
                                   const EnumerateOptions& options = {}) {
  AdelicPolytope c = rational_body(p, lattice_basis);
  detail::require_symmetric(c);
  auto pts = lattice_points(c, options);
  int m = p.dim();
  auto hyp = detail::require("dim(C ∩ Λ) >= m", m, dim_over_K(pts), false);
  Rational coef = detail::factorial_q(m) / pow(Rational(2), static_cast<unsigned long>(m)) * laguerre(m, 2);
  return detail::make_report("henze_classical", pts.size(), adelic_volume(c).scaled(coef), Rational(0), false, hyp);
}

/// |C ∩ K^n| <= (nd)!/2^{nd} L_{nd}(2) vol_A(C)/sqrt|Delta_K|^n for symmetric C
/// with dim_Q(C ∩ K^n) = nd.
inline BoundReport henze_adelic(const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  detail::require_symmetric(c);
  auto pts = lattice_points(c, options);
  int nd = c.n() * c.field().degree();
  auto hyp = detail::require("dim_Q(C ∩ K^n) = nd", nd, dim_over_Q(pts), true);
  Rational coef = detail::factorial_q(nd) / pow(Rational(2), static_cast<unsigned long>(nd)) * laguerre(nd, 2);
  return detail::make_report("henze_adelic", pts.size(), adelic_volume(c, MeasureConvention::with_discriminant).scaled(coef),
                             Rational(0), false, hyp);
}

/// |C ∩ K^n| < (5n)^{nd} vol_A(C) for symmetric C with dim_K(C ∩ K^n) = n.
inline BoundReport gaudron_check(const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  detail::require_symmetric(c);
  auto pts = lattice_points(c, options);
  auto hyp = detail::require("dim_K(C ∩ K^n) = n", c.n(), dim_over_K(pts), true);
  Rational coef = pow(Rational(5 * c.n()), static_cast<unsigned long>(c.n() * c.field().degree()));
  return detail::make_report("gaudron", pts.size(), adelic_volume(c).scaled(coef), Rational(0), true, hyp);
}

/// |C ∩ K^n| <= (nd)! vol_A(C)/sqrt|Delta_K|^n + nd, given dim_Q(C ∩ K^n) = nd.
inline BoundReport blichfeldt_embedded(const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  auto pts = lattice_points(c, options);
  int nd = c.n() * c.field().degree();
  auto hyp = detail::require("dim_Q(C ∩ K^n) = nd", nd, dim_over_Q(pts), true);
  return detail::make_report("blichfeldt_embedded", pts.size(),
                             adelic_volume(c, MeasureConvention::with_discriminant).scaled(detail::factorial_q(nd)),
                             Rational(nd), false, hyp);
}

/// Names accepted by run_bound.
inline const std::vector<std::string>& adelic_bound_names() {
  static const std::vector<std::string> names{"blichfeldt_adelic", "henze_adelic", "gaudron", "blichfeldt_embedded"};
  return names;
}

inline BoundReport run_bound(const std::string& name, const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  if (name == "blichfeldt_adelic" || name == "blichfeldt") return blichfeldt_adelic(c, options);
  if (name == "henze_adelic" || name == "henze") return henze_adelic(c, options);
  if (name == "gaudron") return gaudron_check(c, options);
  if (name == "blichfeldt_embedded" || name == "embedded") return blichfeldt_embedded(c, options);
  throw DomainError("unknown bound: " + name);
}

}  // namespace adelic
