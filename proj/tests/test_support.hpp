#pragma once

#include <random>
#include <vector>

#include "adelic/number_field.hpp"

namespace adelic::testing {

inline NumberField q_field() { return NumberField::rationals(); }
inline NumberField sqrt2_field() { return NumberField::create({Integer(-2), Integer(0), Integer(1)}); }
inline NumberField sqrt3_field() { return NumberField::create({Integer(-3), Integer(0), Integer(1)}); }
inline NumberField sqrt5_field() { return NumberField::create({Integer(-5), Integer(0), Integer(1)}); }

/// a + b * theta
inline FieldElement elem(const NumberField& k, const Rational& a, const Rational& b = 0) {
  std::vector<Rational> c(static_cast<std::size_t>(k.degree()));
  c[0] = a;
  if (k.degree() > 1) c[1] = b;
  return k.element(c);
}

inline FieldElement random_element(const NumberField& k, std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<Rational> c;
  for (int j = 0; j < k.degree(); ++j) c.emplace_back(dist(rng));
  return k.element(c);
}

}  // namespace adelic::testing
