#pragma once

#include <cmath>
#include <iomanip>
#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adelic/bounds.hpp"
#include "json.hpp"

namespace adelic::io {

using json = nlohmann::json;

/// Instance file contents. Points are n-lists of power-basis coordinate lists.
struct Instance {
  std::vector<Integer> min_poly;  ///< ascending coefficients, monic
  NumberField field;
  int n = 0;
  std::string kind;  ///< "hull", "sym_hull" or "general"
  std::vector<Point> generators;
  std::vector<std::vector<Point>> infinite_parts;  ///< general: points whose hull is the part at each real place
  std::vector<Point> module_generators;            ///< general: empty means O^n
  MeasureConvention convention = MeasureConvention::proof;

  AdelicPolytope body() const {
    if (kind == "hull") return adelic_hull(field, n, generators);
    if (kind == "sym_hull") return adelic_sym_hull(field, n, generators);
    require_totally_real(field);
    if (static_cast<int>(infinite_parts.size()) != field.real_places()) {
      throw ParseError("infinite_parts needs one entry per real place");
    }
    std::vector<PlacePolytope> parts;
    for (std::size_t v = 0; v < infinite_parts.size(); ++v) parts.push_back(hull(infinite_parts[v], static_cast<int>(v)));
    OModule m = module_generators.empty() ? OModule::standard(field, n) : OModule::from_generators(field, n, module_generators);
    return AdelicPolytope::general(std::move(m), std::move(parts));
  }
};

namespace detail {

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

inline Integer integer_from_json(const json& j) {
  Rational q = rational_from_json(j);
  if (q.get_den() != 1) throw ParseError("expected an integer, got " + j.dump());
  return q.get_num();
}

inline json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

inline const json& field_of(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

inline std::vector<Point> points_from_json(const NumberField& k, int n, const json& j, const char* what);

}  // namespace detail

inline json point_to_json(const Point& p) {
  json out = json::array();
  for (const auto& x : p) {
    json coords = json::array();
    for (const auto& c : x.coords()) coords.push_back(to_string(c));
    out.push_back(std::move(coords));
  }
  return out;
}

inline Point point_from_json(const NumberField& k, int n, const json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError("point must have " + std::to_string(n) + " coordinates: " + j.dump());
  Point p;
  for (const auto& x : j) {
    if (!x.is_array() || static_cast<int>(x.size()) != k.degree()) {
      throw ParseError("coordinate must list " + std::to_string(k.degree()) + " power-basis entries: " + x.dump());
    }
    std::vector<Rational> coords;
    for (const auto& c : x) coords.push_back(detail::rational_from_json(c));
    p.push_back(k.element(std::move(coords)));
  }
  return p;
}

inline std::vector<Point> detail::points_from_json(const NumberField& k, int n, const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list of points");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(point_from_json(k, n, p));
  return out;
}

inline std::string convention_name(MeasureConvention c) { return c == MeasureConvention::proof ? "proof" : "discriminant"; }

inline MeasureConvention parse_convention(const std::string& s) {
  if (s == "proof") return MeasureConvention::proof;
  if (s == "discriminant") return MeasureConvention::with_discriminant;
  throw ParseError("convention must be \"proof\" or \"discriminant\", got \"" + s + "\"");
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    static const std::vector<std::string> known{"field",          "n", "kind", "generators", "infinite_parts",
                                                "module_generators", "convention"};
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ParseError("unknown key \"" + key + "\"");
  }
  Instance in;
  const json& f = detail::field_of(j, "field");
  if (!f.is_object()) throw ParseError("field must be an object");
  const json& mp = detail::field_of(f, "min_poly");
  if (!mp.is_array() || mp.size() < 2) throw ParseError("min_poly must list at least two coefficients");
  for (const auto& c : mp) in.min_poly.push_back(detail::integer_from_json(c));
  try {
    in.field = NumberField::create(in.min_poly);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid field: ") + e.what());
  }

  const json& n = detail::field_of(j, "n");
  if (!n.is_number_integer() || n.get<int>() < 1 || n.get<int>() > kMaxHullDim) throw ParseError("n must be between 1 and 4");
  in.n = n.get<int>();

  in.kind = detail::field_of(j, "kind").get<std::string>();
  if (j.contains("convention")) in.convention = parse_convention(j.at("convention").get<std::string>());

  if (in.kind == "hull" || in.kind == "sym_hull") {
    in.generators = detail::points_from_json(in.field, in.n, detail::field_of(j, "generators"), "generators");
    if (in.generators.empty()) throw ParseError("generators must be nonempty");
  } else if (in.kind == "general") {
    const json& parts = detail::field_of(j, "infinite_parts");
    if (!parts.is_array()) throw ParseError("infinite_parts must be a list");
    for (const auto& part : parts) in.infinite_parts.push_back(detail::points_from_json(in.field, in.n, part, "infinite_parts entry"));
    if (j.contains("module_generators")) {
      in.module_generators = detail::points_from_json(in.field, in.n, j.at("module_generators"), "module_generators");
    }
  } else {
    throw ParseError("kind must be \"hull\", \"sym_hull\" or \"general\", got \"" + in.kind + "\"");
  }
  return in;
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

/// Canonical form: sorted keys, rationals as "p/q" strings, only the keys the kind uses.
inline json instance_to_json(const Instance& in) {
  json j;
  json mp = json::array();
  for (const auto& c : in.min_poly) mp.push_back(detail::integer_to_json(c));
  j["field"] = json{{"min_poly", mp}};
  j["n"] = in.n;
  j["kind"] = in.kind;
  j["convention"] = convention_name(in.convention);
  auto points = [](const std::vector<Point>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(point_to_json(p));
    return out;
  };
  if (in.kind == "general") {
    json parts = json::array();
    for (const auto& part : in.infinite_parts) parts.push_back(points(part));
    j["infinite_parts"] = parts;
    j["module_generators"] = points(in.module_generators);
  } else {
    j["generators"] = points(in.generators);
  }
  return j;
}

inline std::string serialize(const Instance& in) { return instance_to_json(in).dump(2) + "\n"; }

/// Instance describing an existing body; general bodies list their vertices and a Z-basis.
inline Instance instance_for(const AdelicPolytope& c, MeasureConvention convention = MeasureConvention::proof) {
  Instance in;
  in.min_poly = c.field().min_poly_coeffs();
  in.field = c.field();
  in.n = c.n();
  in.convention = convention;
  if (c.provenance() == Provenance::lattice_polytope || c.provenance() == Provenance::symmetric_lattice_polytope) {
    in.kind = c.provenance() == Provenance::lattice_polytope ? "hull" : "sym_hull";
    in.generators = c.generators();
  } else {
    in.kind = "general";
    for (const auto& p : c.infinite_parts()) in.infinite_parts.push_back(p.vertices());
    in.module_generators = c.finite_part().z_basis();
  }
  return in;
}

// ---------------------------------------------------------------- values

/// Exact rational string, or [lo, hi] strings of an enclosure of the given width.
inline json real_to_json(const PositiveReal& x, const Rational& width) {
  if (auto q = x.exact()) return to_string(*q);
  Interval iv = x.enclosure(width);
  return json::array({to_string(iv.lo()), to_string(iv.hi())});
}

inline json interval_or_exact(const Interval& iv) {
  if (iv.is_point()) return to_string(iv.lo());
  return json::array({to_string(iv.lo()), to_string(iv.hi())});
}

inline json hypothesis_to_json(const HypothesisCheck& h) {
  return json{{"statement", h.statement}, {"required", h.required}, {"actual", h.actual}, {"passed", h.passed}};
}

/// One JSON line per report: bound_name, lhs, rhs, holds, slack, strict, hypothesis.
inline json report_to_json(const BoundReport& r, const Rational& width) {
  json j;
  j["bound_name"] = r.bound_name;
  j["lhs"] = detail::integer_to_json(r.lhs);
  j["strict"] = r.strict;
  j["holds"] = r.holds;
  j["hypothesis"] = hypothesis_to_json(r.hypothesis);
  if (auto e = r.rhs_exact()) {
    j["rhs"] = to_string(*e);
    j["slack"] = to_string(*e - Rational(r.lhs));
  } else {
    Interval rhs = r.rhs_enclosure(width);
    j["rhs"] = interval_or_exact(rhs);
    j["slack"] = interval_or_exact(rhs - Interval(Rational(r.lhs)));
  }
  return j;
}

/// Line for a bound whose hypothesis failed: no verdict.
inline json hypothesis_failure_to_json(const std::string& bound_name, const HypothesisCheck& h) {
  return json{{"bound_name", bound_name}, {"holds", nullptr}, {"hypothesis", hypothesis_to_json(h)}};
}

// ---------------------------------------------------------------- text

/// Power-basis form with t for the generator, e.g. "1 + 3/2*t".
inline std::string element_string(const FieldElement& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < x.coords().size(); ++j) {
    const Rational& c = x.coords()[j];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << to_string(a);
      continue;
    }
    if (a != 1) os << to_string(a) << "*";
    os << "t";
    if (j > 1) os << "^" << j;
  }
  return first ? "0" : os.str();
}

inline std::string point_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) s += ", ";
    s += element_string(p[i]);
  }
  return s + ")";
}

inline double approx(const FieldElement& x, int place) {
  return embed(x, place, Rational(1, 1000000000)).midpoint().get_d();
}

inline std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

// ---------------------------------------------------------------- csv

/// Header for points of K^n: exact power-basis coordinates, then float embeddings.
inline std::string csv_point_header(const NumberField& k, int n) {
  std::string s = "index";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k.degree(); ++j) s += ",x" + std::to_string(i + 1) + "_c" + std::to_string(j);
  }
  for (int i = 0; i < n; ++i) {
    for (int v = 0; v < k.real_places(); ++v) s += ",x" + std::to_string(i + 1) + "_v" + std::to_string(v + 1);
  }
  return s;
}

inline std::string csv_point_row(std::size_t index, const Point& p) {
  std::string s = std::to_string(index);
  for (const auto& x : p) {
    for (const auto& c : x.coords()) s += "," + to_string(c);
  }
  for (const auto& x : p) {
    for (int v = 0; v < x.field().real_places(); ++v) s += "," + format_double(approx(x, v));
  }
  return s;
}

inline std::string points_csv(const NumberField& k, int n, const std::vector<Point>& points) {
  std::string s = csv_point_header(k, n) + "\n";
  for (std::size_t i = 0; i < points.size(); ++i) s += csv_point_row(i, points[i]) + "\n";
  return s;
}

// ---------------------------------------------------------------- plots (nd = 2)

/// rho(iota(x)) in R^{nd} as doubles, index i*r + v.
inline std::vector<double> embedded(const Point& p) {
  const int r = p.at(0).field().real_places();
  std::vector<double> out(p.size() * static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int v = 0; v < r; ++v) out[i * static_cast<std::size_t>(r) + static_cast<std::size_t>(v)] = approx(p[i], v);
  }
  return out;
}

inline void require_plane(const AdelicPolytope& c) {
  if (c.n() * c.field().degree() != 2) throw DomainError("plots need nd = 2");
}

/// Vertices of rho(C_infinity) in the plane: a rectangle of two segments when
/// d = 2, the polygon at the single place when d = 1.
inline std::vector<std::vector<double>> embedded_outline(const AdelicPolytope& c) {
  require_plane(c);
  if (c.field().real_places() == 1) {
    std::vector<std::vector<double>> out;
    for (const auto& vert : c.at(0).vertices()) out.push_back(embedded(vert));
    return out;
  }
  auto segment = [&](int v) {
    std::vector<double> xs;
    for (const auto& vert : c.at(v).vertices()) xs.push_back(approx(vert[0], v));
    return std::make_pair(*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end()));
  };
  auto [x0, x1] = segment(0);
  auto [y0, y1] = segment(1);
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

/// Half-width of the default window: the body's box plus a margin of 2.
inline Rational default_window(const AdelicPolytope& c) {
  Box body = enclosing_box(c);
  Rational w(0);
  for (std::size_t i = 0; i < body.lo.size(); ++i) w = std::max({w, Rational(abs(body.lo[i])), Rational(abs(body.hi[i]))});
  return Rational(ceil_of(w)) + 2;
}

/// Module points whose embedding lies in [-w, w]^2, sorted.
inline std::vector<Point> window_lattice(const AdelicPolytope& c, const Rational& w, const EnumerateOptions& options = {}) {
  require_plane(c);
  Box window{{-w, -w}, {w, w}};
  auto pts = enumerate_in_box(c.finite_part(), window, options);
  sort_points(pts);
  return pts;
}

/// Lattice points of the window with an inside flag, then the outline of C_infinity.
inline std::string figure_csv(const AdelicPolytope& c, const Rational& w, const EnumerateOptions& options = {}) {
  const NumberField& k = c.field();
  const std::size_t exact_cols = static_cast<std::size_t>(c.n() * k.degree());
  std::string s = "kind," + csv_point_header(k, c.n()) + ",inside\n";
  auto pts = window_lattice(c, w, options);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s += "lattice," + csv_point_row(i, pts[i]) + "," + (c.contains_at_infinity(pts[i]) ? "1" : "0") + "\n";
  }
  auto outline = embedded_outline(c);
  for (std::size_t i = 0; i < outline.size(); ++i) {
    s += "body," + std::to_string(i) + std::string(exact_cols, ',');
    for (double x : outline[i]) s += "," + format_double(x);
    s += ",\n";
  }
  return s;
}

struct SvgOptions {
  Rational half_width = 0;  ///< window [-w, w]^2; 0 picks default_window
  bool labels = true;
  int pixels_per_unit = 40;
};

/// Lattice rho(iota(M)) in the window with rho(C_infinity) drawn underneath.
inline std::string svg_plot(const AdelicPolytope& c, const SvgOptions& options = {}, const EnumerateOptions& enumerate = {}) {
  require_plane(c);
  Rational w = sgn(options.half_width) > 0 ? options.half_width : default_window(c);
  const double scale = options.pixels_per_unit;
  const double half = w.get_d();
  const std::string size = format_double(2 * half * scale);
  auto sx = [&](double x) { return format_double((x + half) * scale); };
  auto sy = [&](double y) { return format_double((half - y) * scale); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 " << size
     << " " << size << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <line x1=\"0\" y1=\"" << sy(0) << "\" x2=\"" << size << "\" y2=\"" << sy(0) << "\" stroke=\"#bbbbbb\"/>\n";
  os << "  <line x1=\"" << sx(0) << "\" y1=\"0\" x2=\"" << sx(0) << "\" y2=\"" << size << "\" stroke=\"#bbbbbb\"/>\n";

  auto outline = embedded_outline(c);
  os << "  <polygon points=\"";
  for (std::size_t i = 0; i < outline.size(); ++i) os << (i ? " " : "") << sx(outline[i][0]) << "," << sy(outline[i][1]);
  os << "\" fill=\"#dde8f6\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n";

  for (const auto& p : window_lattice(c, w, enumerate)) {
    auto xy = embedded(p);
    bool inside = c.contains_at_infinity(p);
    os << "  <circle cx=\"" << sx(xy[0]) << "\" cy=\"" << sy(xy[1]) << "\" r=\"" << (inside ? 4 : 2) << "\" fill=\""
       << (inside ? "#b22222" : "#555555") << "\"/>\n";
    if (options.labels && inside) {
      os << "  <text x=\"" << sx(xy[0]) << "\" y=\"" << sy(xy[1]) << "\" dx=\"6\" dy=\"-6\" font-size=\"11\">"
         << point_string(p) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace adelic::io
