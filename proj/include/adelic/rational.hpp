#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adelic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input is lower-dimensional, non-spanning, or otherwise degenerate.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined for the given field or body (e.g. complex places).
class DomainError : public Error {
 public:
  using Error::Error;
};

class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// A certified comparison could not be settled at the finest allowed width.
class UnresolvedError : public Error {
 public:
  using Error::Error;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool seen_digit = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !seen_slash && seen_digit && i + 1 < s.size()) {
      seen_slash = true;
      seen_digit = false;
    } else if (c >= '0' && c <= '9') {
      seen_digit = true;
    } else {
      throw ParseError("malformed rational '" + s + "'");
    }
  }
  if (!seen_digit) throw ParseError("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational pow(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Exact square root when q is the square of a rational.
inline bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return false;
  }
  Integer num;
  Integer den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(num, den);
  root.canonicalize();
  return true;
}

inline Rational dyadic(long exponent) {
  Rational out(1);
  if (exponent >= 0) {
    mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
  } else {
    mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
  }
  return out;
}

/// Largest multiple of 2^-bits not above q.
inline Rational round_down(const Rational& q, unsigned long bits) {
  Rational scaled = q * dyadic(static_cast<long>(bits));
  return Rational(floor_of(scaled)) * dyadic(-static_cast<long>(bits));
}

/// Smallest multiple of 2^-bits not below q.
inline Rational round_up(const Rational& q, unsigned long bits) {
  Rational scaled = q * dyadic(static_cast<long>(bits));
  return Rational(ceil_of(scaled)) * dyadic(-static_cast<long>(bits));
}

}  // namespace adelic
