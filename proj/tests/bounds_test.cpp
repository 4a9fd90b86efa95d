#include <gtest/gtest.h>

#include "adelic/bounds.hpp"
#include "test_support.hpp"

namespace adelic {
namespace {

Point q2(const NumberField& k, const Rational& x, const Rational& y) { return Point{k.from_rational(x), k.from_rational(y)}; }

Matrix<Rational> identity(int m) {
  Matrix<Rational> id(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return id;
}

PlacePolytope box(const NumberField& q, const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
  return hull({q2(q, x0, y0), q2(q, x1, y0), q2(q, x1, y1), q2(q, x0, y1)}, 0);
}

// conv{0, l e_1, e_2, ..., e_m} over Q against the lattice Z^m.
AdelicPolytope sharp_simplex(const NumberField& q, int m, int l) {
  std::vector<Point> pts{zero_point(q, m)};
  for (int i = 0; i < m; ++i) pts.push_back((i == 0 ? Rational(l) : Rational(1)) * unit_point(q, m, i));
  return AdelicPolytope::general(OModule::standard(q, m), {hull(pts, 0)});
}

TEST(Laguerre, Values) {
  EXPECT_EQ(laguerre(0, 2), 1);
  EXPECT_EQ(laguerre(1, 2), 3);
  EXPECT_EQ(laguerre(2, 2), 7);
  EXPECT_EQ(laguerre(3, 1), Rational(1) + 3 + Rational(3, 2) + Rational(1, 6));
  EXPECT_THROW(laguerre(-1, 2), DomainError);
}

TEST(Laguerre, ThreeTermRecurrence) {
  // sum binom(m,k) x^k/k! is the classical Laguerre polynomial at -x, so
  // (m+1) L_{m+1}(x) = (2m+1+x) L_m(x) - m L_{m-1}(x)
  for (int x : {1, 2, 3}) {
    for (int m = 1; m < 30; ++m) {
      EXPECT_EQ((m + 1) * laguerre(m + 1, x), (2 * m + 1 + x) * laguerre(m, x) - m * laguerre(m - 1, x)) << m << " " << x;
    }
  }
}

TEST(BlichfeldtAdelic, StandardSimplexIsSharp) {
  auto q = testing::q_field();
  auto r = blichfeldt_adelic(sharp_simplex(q, 2, 1));
  EXPECT_EQ(r.lhs, 3);
  EXPECT_EQ(r.rhs_exact(), Rational(3));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.equality());
}

TEST(BlichfeldtAdelic, SharpFamily) {
  auto q = testing::q_field();
  for (int m : {2, 3}) {
    for (int l = 1; l <= 5; ++l) {
      auto r = blichfeldt_adelic(sharp_simplex(q, m, l));
      EXPECT_EQ(r.lhs, l + m);
      EXPECT_TRUE(r.equality()) << "m=" << m << " l=" << l;
    }
  }
}

TEST(BlichfeldtAdelic, ExampleTwo) {
  auto r = blichfeldt_adelic(example2().body);
  EXPECT_EQ(r.lhs, 4);
  EXPECT_EQ(r.rhs_exact(), Rational(4 * 1 + 2));  // (2!)^2 * 1 + 2
  EXPECT_TRUE(r.holds);
}

TEST(BlichfeldtAdelic, HypothesisGate) {
  auto k = testing::sqrt2_field();
  // only multiples of (1, 0) inside a thin sliver
  std::vector<PlacePolytope> parts;
  for (int v : {0, 1}) {
    parts.push_back(hull({q2(k, 0, 0), q2(k, 5, 0), q2(k, 5, Rational(1, 10)), q2(k, 0, Rational(1, 10))}, v));
  }
  auto c = AdelicPolytope::general(OModule::standard(k, 2), parts);
  EXPECT_THROW(blichfeldt_adelic(c), HypothesisError);
}

TEST(BlichfeldtClassical, Examples) {
  auto q = testing::q_field();
  auto tri = hull({q2(q, 0, 0), q2(q, 3, 0), q2(q, 0, 1)}, 0);
  auto r = blichfeldt_classical(tri, identity(2));
  EXPECT_EQ(r.lhs, 5);
  EXPECT_EQ(r.rhs_exact(), Rational(5));
  auto sq = blichfeldt_classical(box(q, 0, 1, 0, 1), identity(2));
  EXPECT_EQ(sq.lhs, 4);
  EXPECT_EQ(sq.rhs_exact(), Rational(4));
  try {
    blichfeldt_classical(box(q, 0, 5, 0, Rational(1, 10)), identity(2));
    FAIL() << "thin box passed the hypothesis";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.check().actual, 1);
    EXPECT_EQ(e.check().required, 2);
  }
}

TEST(BlichfeldtClassical, AgreesWithAdelicOverQ) {
  auto q = testing::q_field();
  std::vector<std::vector<Point>> configs{
      {q2(q, 0, 0), q2(q, 3, 0), q2(q, 0, 2), q2(q, 2, 2)},
      {q2(q, -1, 0), q2(q, 2, 1), q2(q, 0, 3)},
      {q2(q, 0, 0), q2(q, 4, 1), q2(q, 1, 4), q2(q, 3, 3), q2(q, 1, 1)},
  };
  for (const auto& pts : configs) {
    auto c = adelic_hull(q, 2, pts);
    auto a = blichfeldt_adelic(c);
    auto b = blichfeldt_classical(c.at(0), c.finite_part().basis_rows());
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.rhs_exact(), b.rhs_exact());
  }
}

TEST(HenzeClassical, Examples) {
  auto q = testing::q_field();
  for (int l = 1; l <= 6; ++l) {
    auto seg = hull({Point{q.from_rational(-l)}, Point{q.from_rational(l)}}, 0);
    auto r = henze_classical(seg, identity(1));
    EXPECT_EQ(r.lhs, 2 * l + 1);
    EXPECT_EQ(r.rhs_exact(), Rational(3 * l));
    EXPECT_TRUE(r.holds);
  }
  auto sq = henze_classical(box(q, -1, 1, -1, 1), identity(2));
  EXPECT_EQ(sq.lhs, 9);
  EXPECT_EQ(sq.rhs_exact(), Rational(14));
  auto cross = henze_classical(sym_hull({q2(q, 2, 0), q2(q, 0, 2)}, 0), identity(2));
  EXPECT_EQ(cross.lhs, 13);
  EXPECT_EQ(cross.rhs_exact(), Rational(28));
  EXPECT_THROW(henze_classical(box(q, 0, 1, 0, 1), identity(2)), HypothesisError);
}

TEST(HenzeAdelic, ReducesToClassicalOverQ) {
  auto q = testing::q_field();
  auto c = adelic_sym_hull(q, 2, {q2(q, 1, 1), q2(q, 1, -1), q2(q, 1, 0), q2(q, 0, 1)});
  auto a = henze_adelic(c);
  auto b = henze_classical(c.at(0), identity(2));
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs_exact(), b.rhs_exact());
}

TEST(HenzeAdelic, SquareOverSqrt2) {
  auto c = dilate(figure1_body(), 2);
  auto r = henze_adelic(c);
  EXPECT_EQ(r.lhs, 7);
  // (2!/4) * 7 * 16 / sqrt(8) = 56/sqrt(8), about 19.8
  EXPECT_EQ(r.scaled.coeff(), 56);
  EXPECT_EQ(r.scaled.radicand(), 8);
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(henze_adelic(figure1_body()), HypothesisError);  // {-1, 0, 1} has dim_Q 1
}

TEST(HenzeAdelic, FirstDilateWithFullRationalDimension) {
  auto c = figure1_body();
  int k = 1;
  while (dim_over_Q(lattice_points(dilate(c, k))) < 2) ++k;
  EXPECT_EQ(k, 2);
  EXPECT_TRUE(henze_adelic(dilate(c, k)).holds);
}

TEST(Gaudron, Examples) {
  auto q = testing::q_field();
  auto seg = gaudron_check(adelic_sym_hull(q, 1, {Point{q.one()}}));
  EXPECT_EQ(seg.lhs, 3);
  EXPECT_EQ(seg.rhs_exact(), Rational(10));
  EXPECT_TRUE(seg.strict);
  EXPECT_TRUE(seg.holds);
  auto fig = gaudron_check(figure1_body());
  EXPECT_EQ(fig.lhs, 3);
  EXPECT_EQ(fig.rhs_exact(), Rational(100));
  auto cross = gaudron_check(adelic_sym_hull(q, 2, {unit_point(q, 2, 0), unit_point(q, 2, 1)}));
  EXPECT_EQ(cross.lhs, 5);
  EXPECT_EQ(cross.rhs_exact(), Rational(200));
  EXPECT_THROW(gaudron_check(example2().body), HypothesisError);
}

TEST(BlichfeldtEmbedded, Examples) {
  auto q = testing::q_field();
  auto r = blichfeldt_embedded(sharp_simplex(q, 2, 1));
  EXPECT_EQ(r.lhs, 3);
  EXPECT_EQ(r.rhs_exact(), Rational(3));
  auto big = blichfeldt_embedded(dilate(figure1_body(), 2));
  EXPECT_EQ(big.lhs, 7);
  EXPECT_FALSE(big.rhs_exact().has_value());  // 32/sqrt(8) + 2
  EXPECT_TRUE(big.holds);
}

TEST(BlichfeldtEmbedded, RightHandSidesAgainstAdelic) {
  auto q = testing::q_field();
  for (int l = 1; l <= 3; ++l) {
    auto c = sharp_simplex(q, 2, l);
    EXPECT_EQ(blichfeldt_adelic(c).rhs_exact(), blichfeldt_embedded(c).rhs_exact());
  }
  // for d = 2 neither right-hand side dominates the other in general
  auto big = dilate(figure1_body(), 2);
  Interval adelic = blichfeldt_adelic(big).rhs_enclosure(Rational(1, 1000));
  Interval embedded = blichfeldt_embedded(big).rhs_enclosure(Rational(1, 1000));
  EXPECT_GT(adelic.lo(), embedded.hi());
}

}  // namespace
}  // namespace adelic
