#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "adelic/interval.hpp"
#include "adelic/linalg.hpp"
#include "adelic/number_field.hpp"
#include "adelic/point.hpp"

namespace adelic {

/// Largest dimension for exact hulls; facets are found over all n-subsets.
inline constexpr int kMaxHullDim = 4;

/// A point of K^n read through one real place.
struct PlacePoint {
  Point coords;
  int place = 0;
};

/// Halfspace {x : normal . x <= offset} at a real place.
struct Facet {
  Point normal;
  FieldElement offset;
};

enum class Location { inside, boundary, outside };

/// offset - normal . x at the place: +1 strictly inside, 0 on, -1 beyond.
inline int facet_side(const Facet& f, const Point& x, int place) { return sign_at(f.offset - dot(f.normal, x), place); }

/// det(p_1 - p_0, ..., p_n - p_0) as an element of K.
inline FieldElement orientation_det(const std::vector<const Point*>& simplex) {
  std::size_t n = simplex.size() - 1;
  if (n == 0) throw Error("orientation of a single point");
  Matrix<FieldElement> m;
  for (std::size_t i = 1; i <= n; ++i) m.push_back(*simplex[i] - *simplex[0]);
  return determinant(std::move(m));
}

/// Exact convex polytope in R^n (n <= 4) at one real place, with vertices in K^n.
///
/// Vertices form the minimal V-description; facets the H-description. In the
/// plane, vertices run counterclockwise from the lexicographically smallest.
class PlacePolytope {
 public:
  PlacePolytope() = default;

  int place() const { return place_; }
  int dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  bool symmetric() const { return symmetric_; }

  /// lambda * P for rational lambda > 0.
  PlacePolytope scaled(const Rational& lambda) const {
    if (sgn(lambda) <= 0) throw DomainError("dilation factor must be positive");
    PlacePolytope out = *this;
    for (auto& v : out.vertices_) v = lambda * v;
    for (auto& f : out.facets_) f.offset *= lambda;
    return out;
  }

 private:
  friend PlacePolytope hull(const std::vector<Point>& points, int place);
  friend PlacePolytope sym_hull(const std::vector<Point>& points, int place);

  int place_ = 0;
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  bool symmetric_ = false;
};

namespace detail {

inline std::vector<Point> distinct_points(const std::vector<Point>& points) {
  std::vector<Point> out;
  for (const auto& p : points) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

/// Sign of a - b at the place, lexicographically over coordinates.
inline int lex_compare(const Point& a, const Point& b, int place) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int s = sign_at(a[i] - b[i], place);
    if (s != 0) return s;
  }
  return 0;
}

/// Normal of the hyperplane through n points of K^n by cofactor expansion;
/// zero when the points are affinely dependent.
inline Point hyperplane_normal(const std::vector<const Point*>& pts) {
  const std::size_t n = pts.size();
  std::vector<Point> diff;
  for (std::size_t i = 1; i < n; ++i) diff.push_back(*pts[i] - *pts[0]);
  Point normal;
  for (std::size_t col = 0; col < n; ++col) {
    Matrix<FieldElement> minor;
    for (const auto& d : diff) {
      Point row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != col) row.push_back(d[j]);
      }
      minor.push_back(std::move(row));
    }
    FieldElement c = determinant(std::move(minor));
    normal.push_back(col % 2 == 0 ? c : -c);
  }
  return normal;
}

template <class F>
void for_each_subset(std::size_t total, std::size_t size, F&& f) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  if (size > total) return;
  while (true) {
    f(idx);
    std::size_t pos = size;
    while (pos > 0 && idx[pos - 1] == total - size + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Convex hull at `place` of points in K^n, n <= 4. Orientation predicates
/// are signs of determinants in K, so the result is exact.
inline PlacePolytope hull(const std::vector<Point>& input, int place) {
  if (input.empty()) throw DegenerateError("hull of no points");
  const int n = static_cast<int>(input[0].size());
  if (n < 1 || n > kMaxHullDim) throw DomainError("exact hulls are supported for n <= 4");
  input[0][0].field().check_place(place);
  std::vector<Point> pts = detail::distinct_points(input);
  if (dim_over_K(pts) < n) throw DegenerateError("points do not span R^n at the place");
  const NumberField k = pts[0][0].field();

  PlacePolytope out;
  out.place_ = place;
  out.dim_ = n;

  if (n == 1) {
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (sign_at(pts[i][0] - pts[lo][0], place) < 0) lo = i;
      if (sign_at(pts[i][0] - pts[hi][0], place) > 0) hi = i;
    }
    out.vertices_ = {pts[lo], pts[hi]};
    out.facets_ = {Facet{Point{k.one()}, pts[hi][0]}, Facet{Point{-k.one()}, -pts[lo][0]}};
    return out;
  }

  std::vector<Facet> facets;
  std::vector<std::vector<std::size_t>> facet_points;
  std::set<std::vector<std::size_t>> seen;
  detail::for_each_subset(pts.size(), static_cast<std::size_t>(n), [&](const std::vector<std::size_t>& idx) {
    std::vector<const Point*> sub;
    for (auto i : idx) sub.push_back(&pts[i]);
    Point normal = detail::hyperplane_normal(sub);
    if (is_zero(normal)) return;
    FieldElement offset = dot(normal, pts[idx[0]]);
    std::vector<std::size_t> on;
    int side = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      int s = sign_at(offset - dot(normal, pts[i]), place);
      if (s == 0) {
        on.push_back(i);
      } else if (side == 0) {
        side = s;
      } else if (s != side) {
        return;
      }
    }
    if (seen.count(on) != 0) return;
    seen.insert(on);
    if (side < 0) {
      normal = -normal;
      offset = -offset;
    }
    facets.push_back(Facet{std::move(normal), std::move(offset)});
    facet_points.push_back(std::move(on));
  });

  // A point is a vertex iff the facets through it pin it down.
  std::vector<std::size_t> vertex_ids;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Matrix<FieldElement> normals;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (std::binary_search(facet_points[f].begin(), facet_points[f].end(), i)) normals.push_back(facets[f].normal);
    }
    if (static_cast<int>(rank(std::move(normals))) == n) vertex_ids.push_back(i);
  }

  if (n == 2) {
    // counterclockwise walk from the lexicographically smallest vertex
    std::size_t start = vertex_ids[0];
    for (auto v : vertex_ids) {
      if (detail::lex_compare(pts[v], pts[start], place) < 0) start = v;
    }
    std::map<std::size_t, std::vector<std::size_t>> adjacent;
    for (const auto& on : facet_points) {
      std::vector<std::size_t> ends;
      for (auto i : on) {
        if (std::find(vertex_ids.begin(), vertex_ids.end(), i) != vertex_ids.end()) ends.push_back(i);
      }
      if (ends.size() != 2) throw Error("hull edge without two vertices");
      adjacent[ends[0]].push_back(ends[1]);
      adjacent[ends[1]].push_back(ends[0]);
    }
    std::vector<std::size_t> order{start};
    std::size_t a = adjacent[start][0];
    std::size_t b = adjacent[start][1];
    std::size_t next = sign_at(orientation_det({&pts[start], &pts[a], &pts[b]}), place) > 0 ? a : b;
    std::size_t prev = start;
    while (next != start) {
      order.push_back(next);
      const auto& nb = adjacent[next];
      std::size_t after = nb[0] == prev ? nb[1] : nb[0];
      prev = next;
      next = after;
    }
    vertex_ids = order;
  }

  for (auto i : vertex_ids) out.vertices_.push_back(pts[i]);
  out.facets_ = std::move(facets);
  return out;
}

inline PlacePolytope hull(const std::vector<PlacePoint>& points) {
  if (points.empty()) throw DegenerateError("hull of no points");
  std::vector<Point> coords;
  for (const auto& p : points) {
    if (p.place != points[0].place) throw Error("points from different places");
    coords.push_back(p.coords);
  }
  return hull(coords, points[0].place);
}

/// Hull of the points together with their negatives.
inline PlacePolytope sym_hull(const std::vector<Point>& points, int place) {
  std::vector<Point> all = points;
  for (const auto& p : points) all.push_back(-p);
  PlacePolytope out = hull(all, place);
  out.symmetric_ = true;
  return out;
}

inline Location member(const PlacePolytope& poly, const Point& x) {
  bool boundary = false;
  for (const auto& f : poly.facets()) {
    int s = facet_side(f, x, poly.place());
    if (s < 0) return Location::outside;
    if (s == 0) boundary = true;
  }
  return boundary ? Location::boundary : Location::inside;
}

inline Location member(const PlacePolytope& poly, const PlacePoint& x) {
  if (x.place != poly.place()) throw Error("point and polytope at different places");
  return member(poly, x.coords);
}

/// A triangulation: each simplex lists n+1 indices into the point list.
struct SimplexSet {
  std::vector<std::vector<std::size_t>> simplices;
  /// Points that are part of the configuration but coincide with an earlier one.
  std::vector<std::size_t> duplicates;
};

/// Incremental triangulation of a full-dimensional configuration, placing
/// points in label order. The first affinely independent points form the
/// initial simplex; a later point beyond the current hull is coned to every
/// visible boundary facet, a point inside it splits the simplices whose
/// closure contains it. Every distinct point ends up a vertex, so
/// #simplices >= #points - n.
inline SimplexSet triangulate(const std::vector<Point>& points, int place) {
  if (points.empty()) throw DegenerateError("triangulation of no points");
  const std::size_t n = points[0].size();
  SimplexSet out;

  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dup = false;
    for (auto j : labels) {
      if (points[j] == points[i]) dup = true;
    }
    if (dup) {
      out.duplicates.push_back(i);
    } else {
      labels.push_back(i);
    }
  }

  std::vector<std::size_t> initial;
  std::vector<Point> chosen;
  for (auto i : labels) {
    if (initial.size() == n + 1) break;
    chosen.push_back(points[i]);
    if (dim_over_K(chosen) == static_cast<int>(initial.size())) {
      initial.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  if (initial.size() != n + 1) throw DegenerateError("configuration is not full-dimensional");

  auto det_sign = [&](const std::vector<std::size_t>& s) {
    std::vector<const Point*> ptrs;
    for (auto i : s) ptrs.push_back(&points[i]);
    return sign_at(orientation_det(ptrs), place);
  };

  std::vector<std::vector<std::size_t>> simplices{initial};
  for (auto p : labels) {
    if (std::find(initial.begin(), initial.end(), p) != initial.end()) continue;
    // o_j: orientation with vertex j replaced by p, relative to the simplex
    std::vector<std::vector<int>> rel(simplices.size());
    bool inside = false;
    for (std::size_t s = 0; s < simplices.size(); ++s) {
      int o = det_sign(simplices[s]);
      bool contains = true;
      for (std::size_t j = 0; j <= n; ++j) {
        auto t = simplices[s];
        t[j] = p;
        int r = det_sign(t) * o;
        rel[s].push_back(r);
        if (r < 0) contains = false;
      }
      if (contains) inside = true;
      if (contains) rel[s].push_back(2);  // marker: closure contains p
    }
    std::vector<std::vector<std::size_t>> next;
    if (inside) {
      for (std::size_t s = 0; s < simplices.size(); ++s) {
        if (rel[s].size() == n + 2) {
          for (std::size_t j = 0; j <= n; ++j) {
            if (rel[s][j] == 0) continue;
            auto t = simplices[s];
            t[j] = p;
            next.push_back(std::move(t));
          }
        } else {
          next.push_back(simplices[s]);
        }
      }
    } else {
      std::map<std::vector<std::size_t>, int> facet_count;
      for (const auto& s : simplices) {
        for (std::size_t j = 0; j <= n; ++j) {
          auto f = s;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
          std::sort(f.begin(), f.end());
          ++facet_count[f];
        }
      }
      next = simplices;
      for (std::size_t s = 0; s < simplices.size(); ++s) {
        for (std::size_t j = 0; j <= n; ++j) {
          if (rel[s][j] >= 0) continue;
          auto f = simplices[s];
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
          std::sort(f.begin(), f.end());
          if (facet_count[f] != 1) continue;
          f.push_back(p);
          next.push_back(std::move(f));
        }
      }
    }
    simplices = std::move(next);
  }
  for (auto& s : simplices) std::sort(s.begin(), s.end());
  std::sort(simplices.begin(), simplices.end());
  out.simplices = std::move(simplices);
  return out;
}

inline SimplexSet triangulate(const std::vector<PlacePoint>& points) {
  if (points.empty()) throw DegenerateError("triangulation of no points");
  std::vector<Point> coords;
  for (const auto& p : points) coords.push_back(p.coords);
  return triangulate(coords, points[0].place);
}

/// Volume of the simplex as w in K with vol = sigma_place(w) >= 0.
inline FieldElement simplex_volume(const std::vector<const Point*>& simplex, int place) {
  FieldElement det = orientation_det(simplex);
  Rational scale = 1 / Rational(factorial(simplex.size() - 1));
  return sign_at(det, place) < 0 ? (-det) * scale : det * scale;
}

/// Volume of P as an explicit w in K with vol(P) = sigma_place(w).
inline FieldElement place_volume(const PlacePolytope& poly) {
  const auto& verts = poly.vertices();
  SimplexSet t = triangulate(verts, poly.place());
  FieldElement w = verts[0][0].field().zero();
  for (const auto& s : t.simplices) {
    std::vector<const Point*> ptrs;
    for (auto i : s) ptrs.push_back(&verts[i]);
    w += simplex_volume(ptrs, poly.place());
  }
  return w;
}

/// Vertices of the intersection of halfspaces in K^n (bounded case); the
/// empty list means the intersection is empty.
inline std::vector<Point> halfspace_vertices(const std::vector<Facet>& halfspaces, int place) {
  std::vector<Point> out;
  if (halfspaces.empty()) return out;
  const std::size_t n = halfspaces[0].normal.size();
  detail::for_each_subset(halfspaces.size(), n, [&](const std::vector<std::size_t>& idx) {
    Matrix<FieldElement> a;
    std::vector<FieldElement> b;
    for (auto i : idx) {
      a.push_back(halfspaces[i].normal);
      b.push_back(halfspaces[i].offset);
    }
    auto x = solve(a, b);
    if (!x) return;
    for (const auto& h : halfspaces) {
      if (facet_side(h, *x, place) < 0) return;
    }
    if (std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(std::move(*x));
  });
  return out;
}

inline std::vector<Point> intersection_vertices(const PlacePolytope& a, const PlacePolytope& b) {
  if (a.place() != b.place()) throw Error("polytopes at different places");
  std::vector<Facet> hs = a.facets();
  hs.insert(hs.end(), b.facets().begin(), b.facets().end());
  return halfspace_vertices(hs, a.place());
}

/// Affine dimension of P ∩ Q; -1 when empty.
inline int intersection_dimension(const PlacePolytope& a, const PlacePolytope& b) {
  return dim_over_K(intersection_vertices(a, b));
}

/// P ∩ Q, which must be full-dimensional.
inline PlacePolytope intersect(const PlacePolytope& a, const PlacePolytope& b) {
  auto verts = intersection_vertices(a, b);
  if (dim_over_K(verts) < a.dim()) throw DegenerateError("intersection is lower-dimensional");
  return hull(verts, a.place());
}

/// vol(P ∩ Q) as w in K with the volume sigma_place(w); zero when the
/// intersection is lower-dimensional.
inline FieldElement overlap_volume(const PlacePolytope& a, const PlacePolytope& b) {
  auto verts = intersection_vertices(a, b);
  if (dim_over_K(verts) < a.dim()) return a.vertices()[0][0].field().zero();
  return place_volume(hull(verts, a.place()));
}

/// Outward-rounded rational bounding box of P: per coordinate [lo, hi].
inline std::pair<std::vector<Rational>, std::vector<Rational>> bounding_box(const PlacePolytope& poly) {
  constexpr unsigned long bits = 32;
  const Rational width = dyadic(-static_cast<long>(bits));
  std::vector<Rational> lo;
  std::vector<Rational> hi;
  for (std::size_t i = 0; i < static_cast<std::size_t>(poly.dim()); ++i) {
    std::optional<Interval> range;
    for (const auto& v : poly.vertices()) {
      Interval e = embed(v[i], poly.place(), width);
      range = range ? hull(*range, e) : e;
    }
    lo.push_back(round_down(range->lo(), bits));
    hi.push_back(round_up(range->hi(), bits));
  }
  return {lo, hi};
}

}  // namespace adelic
