#pragma once

#include "jks/polynomial.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jks {

// numerator * prod_i L_i^{e_i}. Each L_i is non-constant, normalized (first coefficient 1),
// the list is sorted and duplicate-free, and no e_i is 0. A constant numerator plays the
// role of the scalar; general numerators appear once sums are put over a common
// denominator.
class RationalExpr {
 public:
  using Factor = std::pair<LinForm, int>;

  RationalExpr() = default;
  RationalExpr(const Rational& c) : numerator_(c) {}  // NOLINT(google-explicit-constructor)
  explicit RationalExpr(Polynomial numerator) : numerator_(std::move(numerator)) {}

  // form^exponent; throws ZeroDenominator for a zero form with negative exponent.
  static RationalExpr power(const LinForm& form, int exponent);

  const Polynomial& numerator() const { return numerator_; }
  const std::vector<Factor>& factors() const { return factors_; }
  bool is_zero() const { return numerator_.is_zero(); }
  bool is_constant() const { return factors_.empty() && numerator_.is_constant(); }
  // Scalar value of a constant expression.
  Rational scalar() const;
  std::vector<VarId> variables() const;

  Rational evaluate(const std::map<VarId, Rational>& point) const;
  RationalExpr substitute(const std::map<VarId, LinForm>& images) const;
  RationalExpr pow(int e) const;

  RationalExpr& operator*=(const RationalExpr& other);
  RationalExpr& operator*=(const Rational& s);
  RationalExpr& operator/=(const RationalExpr& other);

  friend RationalExpr operator*(RationalExpr a, const RationalExpr& b) { return a *= b; }
  friend RationalExpr operator/(RationalExpr a, const RationalExpr& b) { return a /= b; }
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(RationalExpr a) { return a *= Rational(-1); }

  std::string to_string(const std::vector<std::string>* names = nullptr) const;

 private:
  void multiply_factor(const LinForm& form, int exponent);
  Polynomial numerator_;
  std::vector<Factor> factors_;

  friend RationalExpr sum(const std::vector<RationalExpr>& terms);
};

// Sum over a common factored denominator: each form keeps its minimal exponent.
RationalExpr sum(const std::vector<RationalExpr>& terms);

}  // namespace jks
