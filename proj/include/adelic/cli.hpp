#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adelic/io.hpp"

namespace adelic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitViolated = 4;

enum class Format { text, json, csv, svg };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "svg") return Format::svg;
  throw ParseError("unknown format \"" + s + "\"");
}

struct Options {
  std::optional<MeasureConvention> convention;  ///< overrides the instance when set
  Format format = Format::text;
  Rational precision{1, 1000000};  ///< enclosure width for irrational values
  EnumerateOptions enumerate;
};

struct Result {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs f and maps library errors to exit codes.
inline Result guarded(const std::function<Result()>& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    return {kExitParse, "", std::string("parse error: ") + e.what() + "\n"};
  } catch (const HypothesisError& e) {
    return {kExitHypothesis, "", std::string(e.what()) + "\n"};
  } catch (const DegenerateError& e) {
    return {kExitHypothesis, "", std::string("degenerate input: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    return {kExitParse, "", std::string("unsupported input: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitRuntime, "", std::string("error: ") + e.what() + "\n"};
  }
}

inline std::string read_source(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    os << in.rdbuf();
  }
  return os.str();
}

namespace detail {

inline void unsupported(Format f, const char* command) {
  static const char* names[] = {"text", "json", "csv", "svg"};
  throw ParseError(std::string(command) + " does not write " + names[static_cast<int>(f)]);
}

inline std::string place_label(int v) { return "place " + std::to_string(v + 1); }

inline std::string real_text(const PositiveReal& x, const Rational& width) { return x.str(width); }

inline std::string simplex_name(const NamedConfiguration& cfg, std::size_t s) {
  std::string out;
  for (auto i : cfg.simplex_sets[s]) out += cfg.labels[i];
  return out;
}

inline std::string place_tuple_text(const PlaceTuple& z) {
  std::string s;
  for (std::size_t v = 0; v < z.size(); ++v) {
    if (v > 0) s += ", ";
    s += "z" + std::to_string(v + 1) + " = " + io::point_string(z[v]);
  }
  return s;
}

inline io::json place_tuple_json(const PlaceTuple& z) {
  io::json out = io::json::array();
  for (const auto& p : z) {
    io::json coords = io::json::array();
    for (const auto& x : p) coords.push_back(to_string(x.rational_value()));
    out.push_back(coords);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- volume

inline Result cmd_volume(const io::Instance& in, const Options& opt) {
  AdelicPolytope c = in.body();
  MeasureConvention chosen = opt.convention.value_or(in.convention);
  PositiveReal proof = adelic_volume(c, MeasureConvention::proof);
  PositiveReal disc = adelic_volume(c, MeasureConvention::with_discriminant);
  std::vector<FieldElement> local;
  for (const auto& p : c.infinite_parts()) local.push_back(place_volume(p));

  Result r;
  std::ostringstream os;
  switch (opt.format) {
    case Format::text:
      os << "proof: " << detail::real_text(proof, opt.precision) << "\n";
      os << "discriminant: " << detail::real_text(disc, opt.precision) << "\n";
      os << "convention: " << io::convention_name(chosen) << "\n";
      os << "finite part index: " << to_string(c.finite_part().index()) << "\n";
      for (std::size_t v = 0; v < local.size(); ++v) {
        os << detail::place_label(static_cast<int>(v)) << ": " << io::element_string(local[v]) << " ~ "
           << io::format_double(io::approx(local[v], static_cast<int>(v))) << "\n";
      }
      break;
    case Format::json: {
      io::json j;
      j["proof"] = io::real_to_json(proof, opt.precision);
      j["discriminant"] = io::real_to_json(disc, opt.precision);
      j["convention"] = io::convention_name(chosen);
      j["value"] = chosen == MeasureConvention::proof ? j["proof"] : j["discriminant"];
      j["finite_index"] = to_string(c.finite_part().index());
      io::json places = io::json::array();
      for (const auto& w : local) {
        io::json coords = io::json::array();
        for (const auto& q : w.coords()) coords.push_back(to_string(q));
        places.push_back(coords);
      }
      j["place_volumes"] = places;
      os << j.dump() << "\n";
      break;
    }
    case Format::csv:
      os << "convention,exact,approx\n";
      for (auto [name, value] : {std::pair{"proof", &proof}, std::pair{"discriminant", &disc}}) {
        auto e = value->exact();
        Interval iv = value->enclosure(opt.precision);
        os << name << "," << (e ? to_string(*e) : "") << "," << io::format_double(iv.midpoint().get_d()) << "\n";
      }
      break;
    default:
      detail::unsupported(opt.format, "volume");
  }
  r.out = os.str();
  return r;
}

// ---------------------------------------------------------------- count

inline Result cmd_count(const io::Instance& in, const Options& opt, bool list_points) {
  AdelicPolytope c = in.body();
  auto pts = lattice_points(c, opt.enumerate);
  Result r;
  std::ostringstream os;
  switch (opt.format) {
    case Format::text:
      os << "count: " << pts.size() << "\n";
      if (list_points) {
        for (const auto& p : pts) os << io::point_string(p) << "\n";
      }
      break;
    case Format::json: {
      io::json j;
      j["count"] = pts.size();
      if (list_points) {
        io::json list = io::json::array();
        for (const auto& p : pts) list.push_back(io::point_to_json(p));
        j["points"] = list;
      }
      os << j.dump() << "\n";
      break;
    }
    case Format::csv:
      os << io::points_csv(c.field(), c.n(), pts);
      break;
    default:
      detail::unsupported(opt.format, "count");
  }
  r.out = os.str();
  return r;
}

// ---------------------------------------------------------------- check

/// One report per bound. A single named bound whose hypothesis fails exits 3;
/// with "all", exit 3 only when no bound applies. Any violation exits 4.
inline Result cmd_check(const io::Instance& in, const Options& opt, const std::string& bound) {
  AdelicPolytope c = in.body();
  std::vector<std::string> names = bound == "all" ? adelic_bound_names() : std::vector<std::string>{bound};
  Result r;
  std::ostringstream os;
  std::size_t applied = 0;
  bool violated = false;
  if (opt.format == Format::csv || opt.format == Format::svg) detail::unsupported(opt.format, "check");
  for (const auto& name : names) {
    try {
      BoundReport rep = run_bound(name, c, opt.enumerate);
      ++applied;
      violated = violated || !rep.holds;
      if (opt.format == Format::json) {
        os << io::report_to_json(rep, opt.precision).dump() << "\n";
      } else {
        os << rep.bound_name << ": " << to_string(rep.lhs) << (rep.strict ? " < " : " <= ");
        if (auto e = rep.rhs_exact()) {
          os << to_string(*e);
        } else {
          Interval iv = rep.rhs_enclosure(opt.precision);
          os << "[" << io::format_double(iv.lo().get_d()) << ", " << io::format_double(iv.hi().get_d()) << "]";
        }
        os << (rep.holds ? " holds" : " VIOLATED");
        if (rep.holds && !rep.strict && rep.equality()) os << " (equality)";
        os << "\n";
      }
    } catch (const HypothesisError& e) {
      if (opt.format == Format::json) {
        os << io::hypothesis_failure_to_json(name, e.check()).dump() << "\n";
      } else {
        os << name << ": no verdict, " << e.what() << "\n";
      }
    }
  }
  r.out = os.str();
  if (violated) {
    r.exit_code = kExitViolated;
  } else if (applied == 0) {
    r.exit_code = kExitHypothesis;
  }
  return r;
}

// ---------------------------------------------------------------- growth

inline Result cmd_growth(const io::Instance& in, const Options& opt, int k_max) {
  if (k_max < 4) throw DomainError("growth needs k_max >= 4");
  AdelicPolytope c = in.body();
  GrowthResult g = growth_experiment(c, k_max, opt.enumerate);
  int target = c.n() * c.field().degree();
  Result r;
  std::ostringstream os;
  switch (opt.format) {
    case Format::text:
    case Format::csv:
      os << "k,count\n";
      for (auto [k, count] : g.counts) os << k << "," << count << "\n";
      os << "# exponent " << io::format_double(g.exponent) << " (fit k >= " << g.fit_from << ", nd = " << target << ")\n";
      break;
    case Format::json: {
      io::json j;
      io::json counts = io::json::array();
      for (auto [k, count] : g.counts) counts.push_back({k, count});
      j["counts"] = counts;
      j["exponent"] = g.exponent;
      j["fit_from"] = g.fit_from;
      j["nd"] = target;
      os << j.dump() << "\n";
      break;
    }
    default:
      detail::unsupported(opt.format, "growth");
  }
  r.out = os.str();
  return r;
}

// ---------------------------------------------------------------- triangulate

/// place is 1-based.
inline Result cmd_triangulate(const io::Instance& in, const Options& opt, int place) {
  AdelicPolytope c = in.body();
  AdelicTriangulation t = adelic_triangulation(c, place - 1);
  const auto& cert = t.certificate;
  Result r;
  std::ostringstream os;
  switch (opt.format) {
    case Format::text:
      os << detail::place_label(cert.place) << ": " << cert.k << " simplices (m = " << cert.m << ")\n";
      for (const auto& s : t.index_sets) {
        os << "{";
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
        os << "}\n";
      }
      os << "k >= m: " << (cert.enough_simplices ? "yes" : "no") << "\n";
      os << "pairwise disjoint at the place: " << (cert.pairwise_disjoint ? "yes" : "no") << "\n";
      os << "volumes add up: " << (cert.volumes_add_up ? "yes" : "no") << "\n";
      os << "contained at every place: " << (cert.contained ? "yes" : "no") << "\n";
      break;
    case Format::json: {
      io::json j;
      j["place"] = cert.place + 1;
      j["simplices"] = t.index_sets;
      j["k"] = cert.k;
      j["m"] = cert.m;
      j["certificate"] = {{"enough_simplices", cert.enough_simplices},
                          {"pairwise_disjoint", cert.pairwise_disjoint},
                          {"volumes_add_up", cert.volumes_add_up},
                          {"contained", cert.contained}};
      os << j.dump() << "\n";
      break;
    }
    default:
      detail::unsupported(opt.format, "triangulate");
  }
  r.out = os.str();
  if (!cert.valid()) r.exit_code = kExitRuntime;
  return r;
}

// ---------------------------------------------------------------- examples

struct ExampleOptions {
  std::string out_dir;  ///< figure1 writes figure1.csv and figure1.svg here when set
  io::SvgOptions svg;
};

/// Overlap report for a quadrilateral configuration: the per-pair
/// certificates, the largest disjoint selection and a witness z.
inline io::json quadrilateral_report(const NamedConfiguration& cfg) {
  const std::size_t k = cfg.simplices.size();
  const int n = cfg.body.n();
  const int r = cfg.field.real_places();
  io::json pairs = io::json::array();
  std::size_t overlapping = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      io::json pair;
      pair["pair"] = detail::simplex_name(cfg, i) + "/" + detail::simplex_name(cfg, j);
      io::json places = io::json::array();
      for (int v = 0; v < r; ++v) {
        const auto& a = cfg.simplices[i].at(v);
        const auto& b = cfg.simplices[j].at(v);
        int dim = intersection_dimension(a, b);
        io::json place{{"place", v + 1}, {"dim", dim}};
        if (dim == n) {
          FieldElement w = overlap_volume(a, b);
          io::json coords = io::json::array();
          for (const auto& q : w.coords()) coords.push_back(to_string(q));
          place["volume"] = coords;
          place["approx"] = io::approx(w, v);
        }
        places.push_back(place);
      }
      bool disjoint = volume_disjoint(cfg.simplices[i], cfg.simplices[j]);
      overlapping += disjoint ? 0 : 1;
      pair["places"] = places;
      pair["vol_zero"] = disjoint;
      pairs.push_back(pair);
    }
  }
  io::json three = io::json::array();
  bool every_triple_overlaps = true;
  for (std::size_t skip = 0; skip < k; ++skip) {
    std::vector<AdelicPolytope> sub;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != skip) sub.push_back(cfg.simplices[i]);
    }
    every_triple_overlaps = every_triple_overlaps && max_disjoint_selection(sub) < sub.size();
  }
  io::json j;
  j["simplices"] = k;
  j["pairs"] = pairs;
  j["overlapping_pairs"] = overlapping;
  j["pairwise_vol_zero"] = overlapping == 0;
  j["max_disjoint_selection"] = max_disjoint_selection(cfg.simplices);
  j["every_triple_overlaps"] = every_triple_overlaps;
  auto z = find_uncovered_point(cfg.body, cfg.simplices);
  if (z) {
    j["witness"] = detail::place_tuple_json(*z);
    j["witness_verified"] = verify_uncovered(cfg.body, cfg.simplices, *z);
  } else {
    j["witness"] = nullptr;
    j["witness_verified"] = false;
  }
  return j;
}

inline std::string quadrilateral_text(const std::string& name, const NamedConfiguration& cfg, const io::json& rep) {
  std::ostringstream os;
  os << name << " over Q(t), t^2 = 2\n";
  for (std::size_t i = 0; i < cfg.points.size(); ++i) os << "  " << cfg.labels[i] << " = " << io::point_string(cfg.points[i]) << "\n";
  for (const auto& pair : rep["pairs"]) {
    os << "  " << pair["pair"].get<std::string>() << ": ";
    if (pair["vol_zero"].get<bool>()) {
      for (const auto& p : pair["places"]) {
        if (p["dim"].get<int>() < cfg.body.n()) {
          os << "vol_A = 0 (dim " << p["dim"].get<int>() << " at place " << p["place"].get<int>() << ")\n";
          break;
        }
      }
    } else {
      os << "vol_A > 0 (overlap";
      for (const auto& p : pair["places"]) os << " " << io::format_double(p["approx"].get<double>());
      os << ")\n";
    }
  }
  std::size_t k = rep["simplices"].get<std::size_t>();
  std::size_t overlapping = rep["overlapping_pairs"].get<std::size_t>();
  os << k << " simplices, pairwise vol_A = 0: " << (overlapping == 0 ? "yes" : "no (" + std::to_string(overlapping) + " pairs overlap)")
     << "\n";
  os << "max disjoint selection = " << rep["max_disjoint_selection"].get<std::size_t>() << "\n";
  os << "every 3-subset has an overlapping pair: " << (rep["every_triple_overlaps"].get<bool>() ? "yes" : "no") << "\n";
  if (rep["witness"].is_null()) {
    os << "z not found\n";
  } else {
    PlaceTuple z;
    for (const auto& p : rep["witness"]) {
      Point pt;
      for (const auto& x : p) pt.push_back(cfg.field.from_rational(parse_rational(x.get<std::string>())));
      z.push_back(pt);
    }
    os << "z found: " << detail::place_tuple_text(z) << (rep["witness_verified"].get<bool>() ? " (verified)" : " (NOT verified)")
       << "\n";
  }
  return os.str();
}

inline Result cmd_example(const std::string& name, const Options& opt, const ExampleOptions& ex = {}) {
  Result r;
  std::ostringstream os;
  if (name == "figure1") {
    AdelicPolytope c = figure1_body();
    Rational w = sgn(ex.svg.half_width) > 0 ? ex.svg.half_width : io::default_window(c);
    std::string csv = io::figure_csv(c, w, opt.enumerate);
    io::SvgOptions svg = ex.svg;
    svg.half_width = w;
    std::string plot = io::svg_plot(c, svg, opt.enumerate);
    if (!ex.out_dir.empty()) {
      std::filesystem::create_directories(ex.out_dir);
      std::ofstream(std::filesystem::path(ex.out_dir) / "figure1.csv") << csv;
      std::ofstream(std::filesystem::path(ex.out_dir) / "figure1.svg") << plot;
    }
    auto pts = lattice_points(c, opt.enumerate);
    switch (opt.format) {
      case Format::csv:
        os << csv;
        break;
      case Format::svg:
        os << plot;
        break;
      case Format::json: {
        io::json j;
        j["instance"] = io::instance_to_json(io::instance_for(c));
        io::json list = io::json::array();
        for (const auto& p : pts) list.push_back(io::point_to_json(p));
        j["points"] = list;
        j["count"] = pts.size();
        j["window"] = to_string(w);
        os << j.dump() << "\n";
        break;
      }
      case Format::text:
        os << "O x [-1,1]^2 over Q(t), t^2 = 2\n";
        os << "lattice points in C: " << pts.size() << "\n";
        for (const auto& p : pts) os << "  " << io::point_string(p) << "\n";
        os << "volume proof: " << adelic_volume(c).str(opt.precision) << "\n";
        os << "volume discriminant: " << adelic_volume(c, MeasureConvention::with_discriminant).str(opt.precision) << "\n";
        if (!ex.out_dir.empty()) os << "wrote figure1.csv and figure1.svg to " << ex.out_dir << "\n";
        break;
    }
  } else if (name == "example1" || name == "example2") {
    NamedConfiguration cfg = name == "example1" ? example1() : example2();
    io::json rep = quadrilateral_report(cfg);
    switch (opt.format) {
      case Format::json:
        os << rep.dump() << "\n";
        break;
      case Format::text:
        os << quadrilateral_text(name, cfg, rep);
        break;
      default:
        detail::unsupported(opt.format, "example1/example2");
    }
  } else {
    throw ParseError("unknown example \"" + name + "\" (figure1, example1, example2)");
  }
  r.out = os.str();
  return r;
}

}  // namespace adelic::cli
