#pragma once

#include "jks/linform.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jks {

// Sorted (variable, positive exponent) pairs.
using Monomial = std::vector<std::pair<VarId, int>>;

Monomial monomial_product(const Monomial& a, const Monomial& b);

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const LinForm& form);

  static Polynomial variable(VarId v);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::vector<VarId> variables() const;
  int degree_in(VarId v) const;

  // Coefficients of v^0, v^1, ..., v^deg as polynomials in the other variables.
  std::vector<Polynomial> coefficients_in(VarId v) const;

  Rational evaluate(const std::map<VarId, Rational>& point) const;
  Polynomial substitute(const std::map<VarId, LinForm>& images) const;
  Polynomial pow(int e) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>* names = nullptr) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace jks
