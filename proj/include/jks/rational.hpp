#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace jks {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Always "p/q", including integers ("2/1") and zero ("0/1").
std::string to_string(const Rational& q);

// Accepts "p", "p/q", with optional sign; the unicode minus U+2212 is accepted too.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& q) { return q.sign(); }

inline Rational pow(const Rational& base, int exponent) {
  Rational result = 1;
  Rational b = exponent >= 0 ? base : Rational(1) / base;
  for (int e = exponent >= 0 ? exponent : -exponent; e > 0; --e) result *= b;
  return result;
}

Rational factorial(int n);

// Generalized binomial coefficient e*(e-1)*...*(e-k+1)/k! for any integer e.
Rational binomial(int e, int k);

}  // namespace jks
