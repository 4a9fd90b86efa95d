#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adelic/omodule.hpp"
#include "adelic/real_value.hpp"
#include "adelic/realgeom.hpp"

namespace adelic {

/// Normalisation of the adelic volume. `proof` is the plain product of the
/// local volumes; `with_discriminant` divides it by sqrt|Delta_K|^n.
enum class MeasureConvention { proof, with_discriminant };

enum class Provenance { general_body, lattice_polytope, symmetric_lattice_polytope };

/// Adelic polytope over a totally real field: a global O-module standing for
/// all finite parts, and one exact polytope per real place.
class AdelicPolytope {
 public:
  AdelicPolytope() = default;

  /// Arbitrary body from a module and per-place polytopes.
  static AdelicPolytope general(OModule finite, std::vector<PlacePolytope> parts) {
    const NumberField& k = finite.field();
    if (!k.totally_real()) throw DomainError("adelic bodies need a totally real field");
    if (static_cast<int>(parts.size()) != k.real_places()) throw Error("need one polytope per real place");
    for (std::size_t v = 0; v < parts.size(); ++v) {
      if (parts[v].place() != static_cast<int>(v)) throw Error("polytope attached to the wrong place");
      if (parts[v].dim() != finite.n()) throw Error("polytope dimension differs from the module rank");
    }
    AdelicPolytope out;
    out.finite_ = std::move(finite);
    out.parts_ = std::move(parts);
    return out;
  }

  const NumberField& field() const { return finite_.field(); }
  int n() const { return finite_.n(); }
  const OModule& finite_part() const { return finite_; }
  const std::vector<PlacePolytope>& infinite_parts() const { return parts_; }
  const PlacePolytope& at(int place) const { return parts_.at(static_cast<std::size_t>(place)); }
  Provenance provenance() const { return provenance_; }
  /// Generating points of a lattice polytope; empty for general bodies.
  const std::vector<Point>& generators() const { return generators_; }

  bool symmetric() const {
    for (const auto& p : parts_) {
      for (const auto& v : p.vertices()) {
        if (std::find(p.vertices().begin(), p.vertices().end(), -v) == p.vertices().end()) return false;
      }
    }
    return true;
  }

  /// x lies in every infinite part (boundary included).
  bool contains_at_infinity(const Point& x) const {
    for (const auto& p : parts_) {
      if (member(p, x) == Location::outside) return false;
    }
    return true;
  }

  /// x lies in C: in the module and in every infinite part.
  bool contains(const Point& x) const { return finite_.contains(x) && contains_at_infinity(x); }

 private:
  friend AdelicPolytope adelic_hull(const NumberField&, int, const std::vector<Point>&);
  friend AdelicPolytope adelic_sym_hull(const NumberField&, int, const std::vector<Point>&);

  OModule finite_;
  std::vector<PlacePolytope> parts_;
  Provenance provenance_ = Provenance::general_body;
  std::vector<Point> generators_;
};

inline void require_totally_real(const NumberField& k) {
  if (!k.totally_real()) throw DomainError("field is not totally real");
}

/// conv_A of points of K^n: the module they generate and their hull at every real place.
inline AdelicPolytope adelic_hull(const NumberField& k, int n, const std::vector<Point>& points) {
  require_totally_real(k);
  std::vector<PlacePolytope> parts;
  for (int v = 0; v < k.real_places(); ++v) parts.push_back(hull(points, v));
  AdelicPolytope out = AdelicPolytope::general(OModule::from_generators(k, n, points), std::move(parts));
  out.provenance_ = Provenance::lattice_polytope;
  out.generators_ = points;
  return out;
}

/// Symmetric adelic hull: hulls of +-points at every real place.
inline AdelicPolytope adelic_sym_hull(const NumberField& k, int n, const std::vector<Point>& points) {
  if (!k.totally_real()) throw DomainError("symmetric hulls at complex places are not supported");
  std::vector<PlacePolytope> parts;
  for (int v = 0; v < k.real_places(); ++v) parts.push_back(sym_hull(points, v));
  AdelicPolytope out = AdelicPolytope::general(OModule::from_generators(k, n, points), std::move(parts));
  out.provenance_ = Provenance::symmetric_lattice_polytope;
  out.generators_ = points;
  return out;
}

/// Infinite parts scaled by lambda > 0; finite part unchanged.
inline AdelicPolytope dilate(const AdelicPolytope& c, const Rational& lambda) {
  if (sgn(lambda) <= 0) throw DomainError("dilation factor must be positive");
  if (lambda == 1) return c;
  std::vector<PlacePolytope> parts;
  for (const auto& p : c.infinite_parts()) parts.push_back(p.scaled(lambda));
  return AdelicPolytope::general(c.finite_part(), std::move(parts));
}

inline PositiveReal adelic_volume(const AdelicPolytope& c, MeasureConvention convention = MeasureConvention::proof) {
  std::vector<FieldElement> w;
  for (const auto& p : c.infinite_parts()) w.push_back(place_volume(p));
  PositiveReal vol = PositiveReal::place_product(c.finite_part().finite_volume(), std::move(w));
  if (convention == MeasureConvention::with_discriminant) {
    Rational radicand = pow(Rational(abs(c.field().discriminant())), static_cast<unsigned long>(c.n()));
    vol = vol.divided_by_sqrt(radicand);
  }
  return vol;
}

/// coeff * pi^pi_exponent.
struct PiMultiple {
  Rational coeff;
  int pi_exponent = 0;

  std::string str() const {
    if (pi_exponent == 0) return to_string(coeff);
    std::string pi = pi_exponent == 1 ? "pi" : "pi^" + std::to_string(pi_exponent);
    return coeff == 1 ? pi : to_string(coeff) + "*" + pi;
  }
};

/// Closed form 2^{dn} pi^{sn} / ((n!)^r ((2n)!)^s) for the cross-polytope volume.
inline PiMultiple cross_polytope_volume_formula(const NumberField& k, int n) {
  if (n < 1) throw DomainError("n must be positive");
  auto un = static_cast<unsigned long>(n);
  Rational num = pow(Rational(2), static_cast<unsigned long>(k.degree()) * un);
  Rational den = pow(Rational(factorial(un)), static_cast<unsigned long>(k.real_places())) *
                 pow(Rational(factorial(2 * un)), static_cast<unsigned long>(k.complex_pairs()));
  return {num / den, k.complex_pairs() * n};
}

/// Rational box in R^{nd} around the embedded infinite parts, index i*r + v.
inline Box enclosing_box(const AdelicPolytope& c) {
  const std::size_t r = static_cast<std::size_t>(c.field().real_places());
  const std::size_t n = static_cast<std::size_t>(c.n());
  Box box{std::vector<Rational>(n * r), std::vector<Rational>(n * r)};
  for (std::size_t v = 0; v < r; ++v) {
    auto [lo, hi] = bounding_box(c.infinite_parts()[v]);
    for (std::size_t i = 0; i < n; ++i) {
      box.lo[i * r + v] = lo[i];
      box.hi[i * r + v] = hi[i];
    }
  }
  return box;
}

/// C ∩ K^n, sorted: branch-and-bound enumeration of the embedded module
/// over the enclosing box, filtered by exact membership at every place.
inline std::vector<Point> lattice_points(const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  return enumerate_lattice(c.finite_part(), enclosing_box(c), [&](const Point& x) { return c.contains_at_infinity(x); }, options);
}

/// C ∩ K^n by an unpruned scan of the module coordinates with per-place membership.
inline std::vector<Point> lattice_points_scan(const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  return scan_lattice(c.finite_part(), enclosing_box(c), [&](const Point& x) { return c.contains_at_infinity(x); }, options);
}

/// C1 ∩ C2 componentwise.
inline AdelicPolytope adelic_intersect(const AdelicPolytope& a, const AdelicPolytope& b) {
  if (!(a.field() == b.field()) || a.n() != b.n()) throw Error("bodies over different fields or dimensions");
  std::vector<PlacePolytope> parts;
  for (std::size_t v = 0; v < a.infinite_parts().size(); ++v) {
    parts.push_back(intersect(a.infinite_parts()[v], b.infinite_parts()[v]));
  }
  return AdelicPolytope::general(module_intersect(a.finite_part(), b.finite_part()), std::move(parts));
}

/// Whether C is conv_A of some finite subset of K^n. Any generating set must
/// contain every vertex (as a point of K^n) and lie in C ∩ K^n, so C is a
/// lattice polytope iff all vertices lie in C ∩ K^n and C ∩ K^n generates
/// the finite part.
inline bool is_lattice_polytope(const AdelicPolytope& c, const EnumerateOptions& options = {}) {
  for (const auto& p : c.infinite_parts()) {
    for (const auto& v : p.vertices()) {
      if (!c.contains(v)) return false;
    }
  }
  auto points = lattice_points(c, options);
  Matrix<Rational> rows;
  FieldElement theta = c.field().theta();
  for (auto p : points) {
    for (int j = 0; j < c.field().degree(); ++j) {
      rows.push_back(flatten(p));
      p = theta * p;
    }
  }
  if (static_cast<int>(rank(rows)) < c.n() * c.field().degree()) return false;
  return OModule::from_rows(c.field(), c.n(), std::move(rows)) == c.finite_part();
}

/// Two bodies whose intersection is a body but not a lattice polytope:
/// [0,1]^2 and [1/2,3/2] x [0,1] over Q. The intersection has the vertex
/// (1/2, 0), which is not in the common module Z^2.
inline std::pair<AdelicPolytope, AdelicPolytope> non_lattice_intersection_pair() {
  NumberField q = NumberField::rationals();
  auto pt = [&](const Rational& x, const Rational& y) { return Point{q.from_rational(x), q.from_rational(y)}; };
  auto a = adelic_hull(q, 2, {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
  auto b = adelic_hull(q, 2, {pt(Rational(1, 2), 0), pt(Rational(3, 2), 0), pt(Rational(3, 2), 1), pt(Rational(1, 2), 1)});
  return {a, b};
}

// ---------------------------------------------------------------- triangulation

struct TriangulationCertificate {
  int place = 0;
  std::size_t k = 0;  ///< number of simplices
  std::size_t m = 0;  ///< number of distinct generators minus n
  bool enough_simplices = false;
  bool pairwise_disjoint = false;  ///< lower-dimensional pairwise intersections at the place
  bool volumes_add_up = false;     ///< simplex volumes sum to the polytope volume at the place
  bool contained = false;          ///< every simplex lies in P at every real place

  bool valid() const { return enough_simplices && pairwise_disjoint && volumes_add_up && contained; }
};

struct AdelicTriangulation {
  std::vector<std::vector<std::size_t>> index_sets;  ///< into the generator list
  std::vector<AdelicPolytope> simplices;
  TriangulationCertificate certificate;
};

/// Triangulate the generators at one place and lift every simplex to the
/// adelic lattice simplex on the same generators.
inline AdelicTriangulation adelic_triangulation(const AdelicPolytope& p, int place) {
  if (p.provenance() != Provenance::lattice_polytope) throw DomainError("triangulation needs a lattice polytope");
  const auto& gens = p.generators();
  const int n = p.n();
  if (static_cast<int>(gens.size()) < n + 1) throw DegenerateError("need at least n + 1 generators");
  p.field().check_place(place);

  AdelicTriangulation out;
  SimplexSet t = triangulate(gens, place);
  out.index_sets = t.simplices;
  for (const auto& s : t.simplices) {
    std::vector<Point> verts;
    for (auto i : s) verts.push_back(gens[i]);
    out.simplices.push_back(adelic_hull(p.field(), n, verts));
  }

  auto& cert = out.certificate;
  cert.place = place;
  cert.k = out.simplices.size();
  cert.m = gens.size() - t.duplicates.size() - static_cast<std::size_t>(n);
  cert.enough_simplices = cert.k >= cert.m;
  cert.pairwise_disjoint = true;
  for (std::size_t i = 0; i < cert.k; ++i) {
    for (std::size_t j = i + 1; j < cert.k; ++j) {
      if (intersection_dimension(out.simplices[i].at(place), out.simplices[j].at(place)) >= n) cert.pairwise_disjoint = false;
    }
  }
  FieldElement total = p.field().zero();
  for (const auto& s : out.simplices) total += place_volume(s.at(place));
  cert.volumes_add_up = total == place_volume(p.at(place));
  cert.contained = true;
  for (const auto& s : out.simplices) {
    for (const auto& v : s.generators()) cert.contained = cert.contained && p.contains_at_infinity(v);
  }
  return out;
}

struct SimplexVolumeReport {
  PositiveReal volume;
  Rational bound;  ///< 1 / (n!)^d
  bool bound_holds = false;
  bool equality = false;
};

/// ProofConvention volume of an adelic lattice simplex against 1/(n!)^d.
inline SimplexVolumeReport simplex_volume_check(const AdelicPolytope& s) {
  if (s.provenance() != Provenance::lattice_polytope || static_cast<int>(s.generators().size()) != s.n() + 1) {
    throw DomainError("expected a lattice simplex on n + 1 generators");
  }
  SimplexVolumeReport r;
  r.volume = adelic_volume(s, MeasureConvention::proof);
  r.bound = 1 / pow(Rational(factorial(static_cast<unsigned long>(s.n()))), static_cast<unsigned long>(s.field().degree()));
  int c = r.volume.compare(r.bound);
  r.bound_holds = c >= 0;
  r.equality = c == 0;
  return r;
}

// ---------------------------------------------------------------- overlaps and witnesses

/// vol_A(S ∩ T) = 0 iff the intersection is lower-dimensional at some real
/// place (finite parts always have positive volume).
inline bool volume_disjoint(const AdelicPolytope& s, const AdelicPolytope& t) {
  for (std::size_t v = 0; v < s.infinite_parts().size(); ++v) {
    if (intersection_dimension(s.infinite_parts()[v], t.infinite_parts()[v]) < s.n()) return true;
  }
  return false;
}

/// Size of the largest pairwise volume-disjoint subfamily.
inline std::size_t max_disjoint_selection(const std::vector<AdelicPolytope>& family) {
  const std::size_t k = family.size();
  if (k > 20) throw DomainError("family too large for exhaustive selection");
  std::vector<std::vector<bool>> disjoint(k, std::vector<bool>(k, true));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) disjoint[i][j] = disjoint[j][i] = volume_disjoint(family[i], family[j]);
  }
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (std::size_t j = i + 1; j < k && ok; ++j) {
        if ((mask >> j & 1u) && !disjoint[i][j]) ok = false;
      }
    }
    if (ok) best = std::max(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

/// A point of the real part: one rational point of R^n per real place.
using PlaceTuple = std::vector<Point>;

/// z_v in the interior of P_v at every place and, for every S in the
/// family, z_v outside S_v at some place.
inline bool verify_uncovered(const AdelicPolytope& p, const std::vector<AdelicPolytope>& family, const PlaceTuple& z) {
  for (std::size_t v = 0; v < z.size(); ++v) {
    if (member(p.infinite_parts()[v], z[v]) != Location::inside) return false;
  }
  for (const auto& s : family) {
    bool escaped = false;
    for (std::size_t v = 0; v < z.size(); ++v) escaped = escaped || member(s.infinite_parts()[v], z[v]) == Location::outside;
    if (!escaped) return false;
  }
  return true;
}

/// Rational grid search (step 1/8, then 1/64) for a point of P not covered
/// by any member of the family.
inline std::optional<PlaceTuple> find_uncovered_point(const AdelicPolytope& p, const std::vector<AdelicPolytope>& family) {
  if (family.size() > 31) throw DomainError("family too large for witness search");
  const NumberField& k = p.field();
  const int r = k.real_places();
  const std::size_t n = static_cast<std::size_t>(p.n());
  const std::uint32_t all = (1u << family.size()) - 1;
  for (int denom : {8, 64}) {
    // per place: for each escape mask, one grid point realising it
    std::vector<std::vector<std::pair<std::uint32_t, Point>>> options(static_cast<std::size_t>(r));
    for (int v = 0; v < r; ++v) {
      auto [lo, hi] = bounding_box(p.at(v));
      std::vector<Integer> from;
      std::vector<Integer> to;
      for (std::size_t i = 0; i < n; ++i) {
        from.push_back(ceil_of(lo[i] * denom));
        to.push_back(floor_of(hi[i] * denom));
      }
      std::set<std::uint32_t> seen;
      std::vector<Integer> g = from;
      while (true) {
        Point z;
        for (std::size_t i = 0; i < n; ++i) z.push_back(k.from_rational(Rational(g[i], Integer(denom))));
        if (member(p.at(v), z) == Location::inside) {
          std::uint32_t mask = 0;
          for (std::size_t j = 0; j < family.size(); ++j) {
            if (member(family[j].at(v), z) == Location::outside) mask |= 1u << j;
          }
          if (seen.insert(mask).second) options[static_cast<std::size_t>(v)].emplace_back(mask, z);
        }
        std::size_t pos = 0;
        while (pos < n) {
          if (g[pos] < to[pos]) {
            ++g[pos];
            break;
          }
          g[pos] = from[pos];
          ++pos;
        }
        if (pos == n) break;
      }
    }
    // combine one option per place
    std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
    bool any = true;
    for (const auto& o : options) any = any && !o.empty();
    while (any) {
      std::uint32_t mask = 0;
      for (int v = 0; v < r; ++v) mask |= options[static_cast<std::size_t>(v)][pick[static_cast<std::size_t>(v)]].first;
      if (mask == all) {
        PlaceTuple z;
        for (int v = 0; v < r; ++v) z.push_back(options[static_cast<std::size_t>(v)][pick[static_cast<std::size_t>(v)]].second);
        return z;
      }
      std::size_t pos = 0;
      while (pos < pick.size()) {
        if (pick[pos] + 1 < options[pos].size()) {
          ++pick[pos];
          break;
        }
        pick[pos] = 0;
        ++pos;
      }
      if (pos == pick.size()) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- growth

struct GrowthResult {
  std::vector<std::pair<int, std::size_t>> counts;  ///< (k, |kC ∩ K^n|)
  double exponent = 0;                              ///< least-squares slope of log count against log k
  int fit_from = 1;                                 ///< first k used in the fit
};

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  double sx = 0;
  double sy = 0;
  double sxx = 0;
  double sxy = 0;
  for (auto [x, y] : xy) {
    double lx = std::log(x);
    double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double m = static_cast<double>(xy.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// Counts of kC ∩ K^n for k = 1..k_max. The exponent is fitted on the upper
/// half k_max/2..k_max, where lower-order terms matter least.
inline GrowthResult growth_experiment(const AdelicPolytope& c, int k_max, const EnumerateOptions& options = {}) {
  if (k_max < 2) throw DomainError("growth needs k_max >= 2");
  GrowthResult out;
  out.fit_from = std::max(1, k_max / 2);
  std::vector<std::pair<double, double>> fit;
  for (int k = 1; k <= k_max; ++k) {
    std::size_t count = lattice_points(dilate(c, Rational(k)), options).size();
    out.counts.emplace_back(k, count);
    if (k >= out.fit_from && count > 0) fit.emplace_back(k, static_cast<double>(count));
  }
  out.exponent = fit.size() >= 2 ? loglog_slope(fit) : 0.0;
  return out;
}

// ---------------------------------------------------------------- named configurations

struct NamedConfiguration {
  NumberField field;
  std::vector<Point> points;
  std::vector<std::string> labels;
  AdelicPolytope body;
  std::vector<std::vector<std::size_t>> simplex_sets;  ///< {a,b,c}, {a,b,d}, {a,c,d}, {b,c,d}
  std::vector<AdelicPolytope> simplices;
};

inline NumberField sqrt2_field() { return NumberField::create({Integer(-2), Integer(0), Integer(1)}); }

namespace detail {

inline NamedConfiguration quadrilateral_configuration(const NumberField& k, std::vector<Point> pts) {
  NamedConfiguration out;
  out.field = k;
  out.points = std::move(pts);
  out.labels = {"a", "b", "c", "d"};
  out.body = adelic_hull(k, 2, out.points);
  out.simplex_sets = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& s : out.simplex_sets) {
    out.simplices.push_back(adelic_hull(k, 2, {out.points[s[0]], out.points[s[1]], out.points[s[2]]}));
  }
  return out;
}

}  // namespace detail

/// a = (t, 1), b = (1, 3), c = (2, 3), d = (1, t) over Q[t], t^2 = 2.
inline NamedConfiguration example1() {
  NumberField k = sqrt2_field();
  auto q = [&](int x) { return k.from_rational(x); };
  return detail::quadrilateral_configuration(k, {{k.theta(), q(1)}, {q(1), q(3)}, {q(2), q(3)}, {q(1), k.theta()}});
}

/// The unit square a = (1, 1), b = (2, 1), c = (2, 2), d = (1, 2) over Q[sqrt2].
inline NamedConfiguration example2() {
  NumberField k = sqrt2_field();
  auto q = [&](int x) { return k.from_rational(x); };
  return detail::quadrilateral_configuration(k, {{q(1), q(1)}, {q(2), q(1)}, {q(2), q(2)}, {q(1), q(2)}});
}

/// O x [-1,1]^2 over Q[sqrt2], n = 1.
inline AdelicPolytope figure1_body() {
  NumberField k = sqrt2_field();
  return adelic_sym_hull(k, 1, {Point{k.one()}});
}

}  // namespace adelic
