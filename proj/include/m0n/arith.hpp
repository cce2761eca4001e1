#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace m0n {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// binom(x, k) for an arbitrary integer x.
inline Integer binomial(const Integer& x, unsigned long k) {
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool vanishes(const Integer& x) { return sgn(x) == 0; }
inline bool vanishes(const Rational& x) { return sgn(x) == 0; }

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }
inline std::string to_decimal(const Rational& x) { return x.get_str(10); }

template <class C>
C parse_coefficient(const std::string& s);

template <>
inline Integer parse_coefficient<Integer>(const std::string& s) {
  Integer r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + s);
  return r;
}

template <>
inline Rational parse_coefficient<Rational>(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

// Exact quotient; throws if b does not divide a.
inline Integer exact_div(const Integer& a, const Integer& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw std::domain_error("inexact division");
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace m0n
