#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "adelic/interval.hpp"
#include "adelic/linalg.hpp"
#include "adelic/number_field.hpp"
#include "adelic/point.hpp"

namespace adelic {

/// A full-rank finitely generated O-submodule of K^n, O = Z[theta].
///
/// The module is held as its Z-basis in Q^{nd} coordinates (see flatten()),
/// in canonical form: the row Hermite normal form of the generator matrix
/// after clearing denominators, divided back. Two modules are equal iff
/// their canonical bases are equal. Requires class number one, so the
/// single global module stands for all finite-place factors at once.
class OModule {
 public:
  OModule() = default;

  static OModule from_generators(const NumberField& field, int n, const std::vector<Point>& generators) {
    if (!field.class_number_one()) throw DomainError("finite parts need a field asserted to have class number one");
    if (generators.empty()) throw DegenerateError("module needs at least one generator");
    Matrix<Rational> rows;
    FieldElement theta = field.theta();
    for (const auto& g : generators) {
      if (static_cast<int>(g.size()) != n) throw Error("generator has wrong dimension");
      Point p = g;
      for (int j = 0; j < field.degree(); ++j) {
        rows.push_back(flatten(p));
        if (j + 1 < field.degree()) p = theta * p;
      }
    }
    return from_rows(field, n, std::move(rows), generators);
  }

  /// Module spanned over Z by the given rows of Q^{nd}; the caller
  /// guarantees stability under multiplication by theta.
  static OModule from_rows(const NumberField& field, int n, Matrix<Rational> rows, std::vector<Point> generators = {}) {
    const std::size_t dim = static_cast<std::size_t>(n * field.degree());
    Integer denom(1);
    for (const auto& row : rows) {
      for (const auto& q : row) denom = lcm(denom, q.get_den());
    }
    Matrix<Integer> scaled;
    for (const auto& row : rows) {
      std::vector<Integer> r;
      for (const auto& q : row) r.push_back(Integer(q * Rational(denom)));
      scaled.push_back(std::move(r));
    }
    Matrix<Integer> hnf = hermite_normal_form(std::move(scaled));
    if (hnf.size() != dim) throw DegenerateError("generators do not span K^n");
    OModule m;
    m.field_ = field;
    m.n_ = n;
    m.index_ = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<Rational> r;
      for (const auto& z : hnf[i]) r.push_back(canonical(Rational(z, denom)));
      m.index_ *= r[i];
      m.basis_.push_back(std::move(r));
    }
    if (generators.empty()) {
      for (const auto& r : m.basis_) generators.push_back(unflatten(field, n, r));
    }
    m.generators_ = std::move(generators);
    return m;
  }

  /// The module O^n.
  static OModule standard(const NumberField& field, int n) {
    std::vector<Point> gens;
    for (int i = 0; i < n; ++i) gens.push_back(unit_point(field, n, i));
    return from_generators(field, n, gens);
  }

  const NumberField& field() const { return field_; }
  int n() const { return n_; }
  const std::vector<Point>& generators() const { return generators_; }
  /// Canonical Z-basis rows (upper triangular, positive diagonal).
  const Matrix<Rational>& basis_rows() const { return basis_; }

  std::vector<Point> z_basis() const {
    std::vector<Point> out;
    for (const auto& r : basis_) out.push_back(unflatten(field_, n_, r));
    return out;
  }

  /// q with det(rho(iota(M))) = q * det(rho(iota(O^n))).
  const Rational& index() const { return index_; }

  /// Product of the local volumes over all finite places.
  Rational finite_volume() const { return 1 / index_; }

  /// Integer coordinates of x against the canonical basis, if x lies in M.
  std::optional<std::vector<Integer>> coordinates(const Point& x) const {
    auto target = flatten(x);
    std::vector<Integer> c;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      Rational rest = target[k];
      for (std::size_t l = 0; l < k; ++l) rest -= Rational(c[l]) * basis_[l][k];
      Rational ck = rest / basis_[k][k];
      if (!is_integer(ck)) return std::nullopt;
      c.push_back(ck.get_num());
    }
    return c;
  }

  bool contains(const Point& x) const { return coordinates(x).has_value(); }

  bool contains(const OModule& other) const {
    for (const auto& b : other.z_basis()) {
      if (!contains(b)) return false;
    }
    return true;
  }

  /// theta * b lies in the Z-span for every basis vector b.
  bool theta_stable() const {
    FieldElement theta = field_.theta();
    for (const auto& b : z_basis()) {
      if (!contains(theta * b)) return false;
    }
    return true;
  }

  friend bool operator==(const OModule& a, const OModule& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

 private:
  NumberField field_;
  int n_ = 0;
  std::vector<Point> generators_;
  Matrix<Rational> basis_;
  Rational index_{1};
};

inline OModule module_from_generators(const NumberField& field, int n, const std::vector<Point>& generators) {
  return OModule::from_generators(field, n, generators);
}

namespace detail {

/// Basis of the dual lattice {y : y . x in Z for all x in M} for the
/// standard inner product on Q^{nd}.
inline Matrix<Rational> dual_rows(const Matrix<Rational>& rows) {
  auto inv = inverse(rows);
  if (!inv) throw DegenerateError("singular lattice basis");
  return transpose(*inv);
}

}  // namespace detail

/// M1 ∩ M2, computed as the dual of M1* + M2*.
inline OModule module_intersect(const OModule& a, const OModule& b) {
  if (!(a.field() == b.field()) || a.n() != b.n()) throw Error("modules over different spaces");
  Matrix<Rational> duals = detail::dual_rows(a.basis_rows());
  for (auto& r : detail::dual_rows(b.basis_rows())) duals.push_back(std::move(r));
  OModule sum = OModule::from_rows(a.field(), a.n(), std::move(duals));
  OModule out = OModule::from_rows(a.field(), a.n(), detail::dual_rows(sum.basis_rows()));
  if (!out.theta_stable()) throw Error("intersection is not an O-module");
  return out;
}

/// Trace-form Gram matrix <b_k, b_l> = sum_i Tr(b_{k,i} b_{l,i}) of the basis.
inline Matrix<Rational> trace_gram(const OModule& m) {
  auto basis = m.z_basis();
  std::size_t dim = basis.size();
  Matrix<Rational> g(dim, std::vector<Rational>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t l = k; l < dim; ++l) {
      Rational t(0);
      for (int i = 0; i < m.n(); ++i) t += trace(basis[k][static_cast<std::size_t>(i)] * basis[l][static_cast<std::size_t>(i)]);
      g[k][l] = t;
      g[l][k] = t;
    }
  }
  return g;
}

/// det(rho(iota(M)))^2, exact, via the trace form (totally real fields).
inline Rational lattice_det_squared(const OModule& m) {
  if (!m.field().totally_real()) throw DomainError("trace-form determinant needs a totally real field");
  return determinant(trace_gram(m));
}

/// Axis-parallel box in R^{nd}; coordinate (i, v) sits at index i*r + v.
struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

struct EnumerateOptions {
  std::uint64_t cap = 5'000'000;  ///< maximum number of candidate lattice points examined
};

/// rho(iota(x)) as certified enclosures, index i*r + v.
inline std::vector<Interval> embed_point(const Point& x, const Rational& width) {
  std::vector<Interval> out;
  int r = x[0].field().real_places();
  for (const auto& xi : x) {
    for (int v = 0; v < r; ++v) out.push_back(embed(xi, v, width));
  }
  return out;
}

namespace detail {

inline constexpr unsigned long kEnumBits = 48;

struct EnumerationPlan {
  std::vector<Point> basis;
  std::vector<Integer> c_lo;
  std::vector<Integer> c_hi;
  Matrix<Interval> embedding;  // [row (i,v)][k]
  bool empty = false;
};

inline EnumerationPlan plan_enumeration(const OModule& m, const Box& box) {
  NumberField k = m.field();
  if (!k.totally_real()) throw DomainError("lattice enumeration needs a totally real field");
  const std::size_t dim = static_cast<std::size_t>(m.n() * k.degree());
  if (box.lo.size() != dim || box.hi.size() != dim) throw Error("box has wrong dimension");
  EnumerationPlan plan;
  plan.basis = m.z_basis();
  for (std::size_t i = 0; i < dim; ++i) {
    if (box.hi[i] < box.lo[i]) plan.empty = true;
  }
  if (plan.empty) return plan;

  // Dual basis for the trace form: c_k = sum_{i,v} sigma_v(b*_{k,i}) y_{i,v}.
  auto gram_inv = inverse(trace_gram(m));
  if (!gram_inv) throw DegenerateError("degenerate trace form");
  const Rational width = dyadic(-static_cast<long>(kEnumBits));
  for (std::size_t kk = 0; kk < dim; ++kk) {
    Point dual = zero_point(k, m.n());
    for (std::size_t l = 0; l < dim; ++l) dual = dual + (*gram_inv)[kk][l] * plan.basis[l];
    auto f = embed_point(dual, width);
    Interval c(Rational(0));
    for (std::size_t row = 0; row < dim; ++row) c += (f[row].rounded_out(kEnumBits) * Interval(box.lo[row], box.hi[row])).rounded_out(kEnumBits);
    plan.c_lo.push_back(ceil_of(c.lo()));
    plan.c_hi.push_back(floor_of(c.hi()));
    if (plan.c_hi.back() < plan.c_lo.back()) plan.empty = true;
  }
  plan.embedding.assign(dim, std::vector<Interval>(dim));
  for (std::size_t kk = 0; kk < dim; ++kk) {
    auto e = embed_point(plan.basis[kk], width);
    for (std::size_t row = 0; row < dim; ++row) plan.embedding[row][kk] = e[row].rounded_out(kEnumBits);
  }
  return plan;
}

inline Point combine(const NumberField& k, int n, const std::vector<Point>& basis, const std::vector<Integer>& c) {
  std::vector<Rational> flat(static_cast<std::size_t>(n * k.degree()));
  for (std::size_t l = 0; l < basis.size(); ++l) {
    if (sgn(c[l]) == 0) continue;
    auto b = flatten(basis[l]);
    for (std::size_t j = 0; j < flat.size(); ++j) flat[j] += Rational(c[l]) * b[j];
  }
  return unflatten(k, n, flat);
}

}  // namespace detail

/// Exact test of rho(iota(x)) against a rational box.
inline bool in_box(const Point& x, const Box& box) {
  int r = x[0].field().real_places();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int v = 0; v < r; ++v) {
      std::size_t row = i * static_cast<std::size_t>(r) + static_cast<std::size_t>(v);
      FieldElement xi = x[i];
      if (sign_at(xi - x[i].field().from_rational(box.lo[row]), v) < 0) return false;
      if (sign_at(x[i].field().from_rational(box.hi[row]) - xi, v) < 0) return false;
    }
  }
  return true;
}

/// All x in M whose embedding lies in `box` and which satisfy `accept`,
/// sorted. Branch and bound over the canonical basis coordinates: coordinate
/// ranges come from the dual basis, and each partial assignment is pruned
/// when some embedded coordinate can no longer reach the box. Every bound is
/// an outward-rounded enclosure, so no point of M in the box is missed;
/// `accept` then decides membership exactly.
inline std::vector<Point> enumerate_lattice(const OModule& m, const Box& box, const std::function<bool(const Point&)>& accept,
                                            const EnumerateOptions& options = {}) {
  auto plan = detail::plan_enumeration(m, box);
  std::vector<Point> out;
  if (plan.empty) return out;
  const std::size_t dim = plan.basis.size();
  const NumberField& k = m.field();

  // tail[level][row]: contribution of coordinates level..dim-1 over their ranges
  Matrix<Interval> tail(dim + 1, std::vector<Interval>(dim, Interval(Rational(0))));
  for (std::size_t level = dim; level-- > 0;) {
    Interval range(Rational(plan.c_lo[level]), Rational(plan.c_hi[level]));
    for (std::size_t row = 0; row < dim; ++row) {
      tail[level][row] = (tail[level + 1][row] + plan.embedding[row][level] * range).rounded_out(detail::kEnumBits);
    }
  }

  std::uint64_t examined = 0;
  std::vector<Integer> c(dim);
  std::vector<std::vector<Interval>> partial(dim + 1, std::vector<Interval>(dim, Interval(Rational(0))));
  std::function<void(std::size_t)> descend = [&](std::size_t level) {
    if (level == dim) {
      if (++examined > options.cap) throw CapExceededError("lattice enumeration exceeded the candidate cap");
      Point x = detail::combine(k, m.n(), plan.basis, c);
      if (accept(x)) out.push_back(std::move(x));
      return;
    }
    for (Integer v = plan.c_lo[level]; v <= plan.c_hi[level]; ++v) {
      c[level] = v;
      bool feasible = true;
      for (std::size_t row = 0; row < dim; ++row) {
        Interval y = (partial[level][row] + plan.embedding[row][level] * Rational(v)).rounded_out(detail::kEnumBits);
        partial[level + 1][row] = y;
        Interval reach = y + tail[level + 1][row];
        if (reach.hi() < box.lo[row] || reach.lo() > box.hi[row]) {
          feasible = false;
          break;
        }
      }
      if (feasible) descend(level + 1);
    }
  };
  descend(0);
  sort_points(out);
  return out;
}

/// All x in M with rho(iota(x)) inside the closed box, sorted.
inline std::vector<Point> enumerate_in_box(const OModule& m, const Box& box, const EnumerateOptions& options = {}) {
  return enumerate_lattice(m, box, [&](const Point& x) { return in_box(x, box); }, options);
}

/// Same point set by a plain scan of the coordinate ranges, without pruning.
inline std::vector<Point> scan_lattice(const OModule& m, const Box& box, const std::function<bool(const Point&)>& accept,
                                       const EnumerateOptions& options = {}) {
  auto plan = detail::plan_enumeration(m, box);
  std::vector<Point> out;
  if (plan.empty) return out;
  const std::size_t dim = plan.basis.size();
  std::vector<Integer> c = plan.c_lo;
  std::uint64_t examined = 0;
  while (true) {
    if (++examined > options.cap) throw CapExceededError("lattice scan exceeded the candidate cap");
    Point x = detail::combine(m.field(), m.n(), plan.basis, c);
    if (accept(x)) out.push_back(std::move(x));
    std::size_t pos = 0;
    while (pos < dim) {
      if (c[pos] < plan.c_hi[pos]) {
        ++c[pos];
        break;
      }
      c[pos] = plan.c_lo[pos];
      ++pos;
    }
    if (pos == dim) break;
  }
  sort_points(out);
  return out;
}

}  // namespace adelic
