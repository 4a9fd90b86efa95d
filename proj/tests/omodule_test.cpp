#include <gtest/gtest.h>

#include <random>

#include "adelic/omodule.hpp"
#include "test_support.hpp"

namespace adelic {
namespace {

using testing::elem;

Point pt(std::initializer_list<FieldElement> xs) { return Point(xs); }

// Exact sign of a + b*sqrt(m) for rationals a, b and squarefree m > 0.
int sign_quadratic(const Rational& a, const Rational& b, int m) {
  int sa = sgn(a);
  int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  return cmp(a * a, b * b * m) > 0 ? sa : sb;
}

// Brute force over O = Z[sqrt m]: all a + b sqrt m with both conjugates in [lo, hi].
std::vector<std::pair<int, int>> brute_force_box(int m, const Rational& lo, const Rational& hi, int range) {
  std::vector<std::pair<int, int>> out;
  for (int a = -range; a <= range; ++a) {
    for (int b = -range; b <= range; ++b) {
      bool ok = true;
      for (int conj : {1, -1}) {
        if (sign_quadratic(Rational(a) - lo, Rational(b * conj), m) < 0) ok = false;
        if (sign_quadratic(hi - a, Rational(-b * conj), m) < 0) ok = false;
      }
      if (ok) out.emplace_back(a, b);
    }
  }
  return out;
}

TEST(OModule, StandardLatticeOverQ) {
  auto q = testing::q_field();
  auto m = module_from_generators(q, 2, {unit_point(q, 2, 0), unit_point(q, 2, 1)});
  EXPECT_EQ(m.index(), 1);
  EXPECT_EQ(m, OModule::standard(q, 2));
}

TEST(OModule, RingOfIntegers) {
  auto k = testing::sqrt2_field();
  auto m = module_from_generators(k, 1, {pt({k.one()})});
  EXPECT_EQ(m.index(), 1);
  EXPECT_TRUE(m.theta_stable());
  EXPECT_TRUE(m.contains(pt({elem(k, 3, 2)})));
  EXPECT_FALSE(m.contains(pt({elem(k, 0, Rational(1, 2))})));
}

TEST(OModule, HalfIntegers) {
  auto q = testing::q_field();
  auto m = module_from_generators(q, 1, {pt({q.from_rational(Rational(1, 2))}), pt({q.one()})});
  EXPECT_EQ(m.index(), Rational(1, 2));
  EXPECT_EQ(m.basis_rows()[0][0], Rational(1, 2));
  EXPECT_TRUE(m.contains(pt({q.from_rational(Rational(3, 2))})));
  EXPECT_FALSE(m.contains(pt({q.from_rational(Rational(1, 3))})));
  EXPECT_EQ(m.finite_volume(), 2);
}

TEST(OModule, FiniteVolume) {
  auto k = testing::sqrt2_field();
  EXPECT_EQ(OModule::standard(k, 2).finite_volume(), 1);
  auto unit = module_from_generators(k, 1, {pt({elem(k, 1, 1)})});
  EXPECT_EQ(unit.finite_volume(), 1);
  EXPECT_EQ(unit, OModule::standard(k, 1));
  auto two = module_from_generators(k, 1, {pt({k.from_rational(2)})});
  EXPECT_EQ(two.finite_volume(), Rational(1, 4));
}

TEST(OModule, RejectsDegenerateAndClassNumber) {
  auto q = testing::q_field();
  EXPECT_THROW(module_from_generators(q, 2, {unit_point(q, 2, 0), Point{q.from_rational(3), q.zero()}}), DegenerateError);
  NumberField::Options opts;
  opts.class_number_one = false;
  auto k = NumberField::create({Integer(-2), Integer(0), Integer(1)}, opts);
  EXPECT_THROW(module_from_generators(k, 1, {pt({k.one()})}), DomainError);
}

TEST(OModule, Intersections) {
  auto q = testing::q_field();
  auto two = module_from_generators(q, 1, {pt({q.from_rational(2)})});
  auto three = module_from_generators(q, 1, {pt({q.from_rational(3)})});
  auto six = module_from_generators(q, 1, {pt({q.from_rational(6)})});
  EXPECT_EQ(module_intersect(two, three), six);
  EXPECT_EQ(module_intersect(two, two), two);

  auto k = testing::sqrt2_field();
  auto o = OModule::standard(k, 1);
  auto half = module_from_generators(k, 1, {pt({k.from_rational(Rational(1, 2))})});
  EXPECT_EQ(module_intersect(o, half), o);
  EXPECT_TRUE(half.contains(o));
}

TEST(OModule, IntersectionIsCommutativeAndAssociative) {
  auto k = testing::sqrt2_field();
  std::mt19937 rng(3);
  for (int t = 0; t < 15; ++t) {
    std::vector<OModule> ms;
    for (int j = 0; j < 3; ++j) {
      std::vector<Point> gens;
      for (int g = 0; g < 2; ++g) {
        gens.push_back(Point{testing::random_element(k, rng, -3, 3), testing::random_element(k, rng, -3, 3)});
      }
      try {
        ms.push_back(module_from_generators(k, 2, gens));
      } catch (const DegenerateError&) {
        break;
      }
    }
    if (ms.size() < 3) continue;
    EXPECT_EQ(module_intersect(ms[0], ms[1]), module_intersect(ms[1], ms[0]));
    EXPECT_EQ(module_intersect(module_intersect(ms[0], ms[1]), ms[2]), module_intersect(ms[0], module_intersect(ms[1], ms[2])));
    auto both = module_intersect(ms[0], ms[1]);
    EXPECT_TRUE(ms[0].contains(both));
    EXPECT_TRUE(ms[1].contains(both));
  }
}

TEST(OModule, FreeModuleVolumeMatchesNorm) {
  for (auto k : {testing::sqrt2_field(), testing::sqrt5_field(), testing::q_field()}) {
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
      Point a{testing::random_element(k, rng, -4, 4), testing::random_element(k, rng, -4, 4)};
      Point b{testing::random_element(k, rng, -4, 4), testing::random_element(k, rng, -4, 4)};
      FieldElement det = a[0] * b[1] - a[1] * b[0];
      if (det.is_zero()) continue;
      auto m = module_from_generators(k, 2, {a, b});
      EXPECT_EQ(m.finite_volume(), 1 / abs(norm(det)));
      EXPECT_TRUE(m.theta_stable());
      // det(rho iota M)^2 = index^2 |Delta|^n, exactly through the trace form
      EXPECT_EQ(lattice_det_squared(m), m.index() * m.index() * pow(Rational(abs(k.discriminant())), 2));
      for (const auto& g : {a, b}) EXPECT_TRUE(m.contains(g));
    }
  }
}

TEST(OModule, TranslatedGeneratorsGiveSubmodule) {
  auto k = testing::sqrt5_field();
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    std::vector<Point> gens;
    for (int g = 0; g < 4; ++g) gens.push_back(Point{testing::random_element(k, rng, -3, 3), testing::random_element(k, rng, -3, 3)});
    std::vector<Point> shifted;
    for (const auto& g : gens) shifted.push_back(g - gens[0]);
    try {
      auto m = module_from_generators(k, 2, gens);
      auto s = module_from_generators(k, 2, shifted);
      EXPECT_TRUE(m.contains(s));
    } catch (const DegenerateError&) {
    }
  }
}

TEST(EnumerateInBox, Integers) {
  auto q = testing::q_field();
  auto z = OModule::standard(q, 1);
  auto pts = enumerate_in_box(z, Box{{Rational(-3, 2)}, {Rational(3, 2)}});
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0][0], q.from_rational(-1));
  EXPECT_EQ(pts[2][0], q.from_rational(1));
}

TEST(EnumerateInBox, UnitSquareCornersOverQ) {
  auto q = testing::q_field();
  auto z2 = OModule::standard(q, 2);
  auto pts = enumerate_in_box(z2, Box{{0, 0}, {1, 1}});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[1], (Point{q.zero(), q.one()}));
}

TEST(EnumerateInBox, FigureOneSquare) {
  auto k = testing::sqrt2_field();
  auto o = OModule::standard(k, 1);
  auto pts = enumerate_in_box(o, Box{{-1, -1}, {1, 1}});
  auto oracle = brute_force_box(2, -1, 1, 6);
  ASSERT_EQ(pts.size(), oracle.size());
  EXPECT_EQ(pts.size(), 3u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(pts[i][0], elem(k, oracle[i].first, oracle[i].second));
  }
}

TEST(EnumerateInBox, MatchesBruteForceOnRandomBoxes) {
  std::mt19937 rng(21);
  for (int m : {2, 5, 3}) {
    auto k = NumberField::create({Integer(-m), Integer(0), Integer(1)});
    auto o = OModule::standard(k, 1);
    for (int t = 0; t < 12; ++t) {
      std::uniform_int_distribution<int> dist(-12, 12);
      Rational a(dist(rng), 3);
      Rational b(dist(rng), 3);
      Rational lo = std::min(a, b);
      Rational hi = std::max(a, b);
      auto pts = enumerate_in_box(o, Box{{lo, lo}, {hi, hi}});
      auto oracle = brute_force_box(m, lo, hi, 12);
      ASSERT_EQ(pts.size(), oracle.size()) << "m=" << m << " box " << lo << ".." << hi;
      for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(pts[i][0], elem(k, oracle[i].first, oracle[i].second));
    }
  }
}

TEST(EnumerateInBox, SublatticeAgreesWithFilteredBruteForce) {
  auto k = testing::sqrt2_field();
  auto m = module_from_generators(k, 1, {Point{elem(k, 1, 1) * elem(k, 0, 1)}, Point{k.from_rational(3)}});
  auto pts = enumerate_in_box(m, Box{{-5, -4}, {6, 3}});
  std::size_t expected = 0;
  for (int a = -20; a <= 20; ++a) {
    for (int b = -20; b <= 20; ++b) {
      Point x{elem(k, a, b)};
      if (m.contains(x) && in_box(x, Box{{-5, -4}, {6, 3}})) ++expected;
    }
  }
  EXPECT_EQ(pts.size(), expected);
  EXPECT_EQ(scan_lattice(m, Box{{-5, -4}, {6, 3}}, [](const Point&) { return true; }).size() >= pts.size(), true);
}

TEST(EnumerateInBox, CapIsEnforced) {
  auto q = testing::q_field();
  auto z2 = OModule::standard(q, 2);
  EnumerateOptions opts;
  opts.cap = 10;
  EXPECT_THROW(enumerate_in_box(z2, Box{{-5, -5}, {5, 5}}, opts), CapExceededError);
}

}  // namespace
}  // namespace adelic
