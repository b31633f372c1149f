#pragma once

#include "jks/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jks {

using VarId = int;

// Affine form sum_v c_v * u_v + constant. Zero coefficients are never stored.
class LinForm {
 public:
  LinForm() = default;
  explicit LinForm(Rational constant) : constant_(std::move(constant)) {}

  static LinForm variable(VarId v, const Rational& coefficient = 1);

  const std::map<VarId, Rational>& coefficients() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  Rational coefficient(VarId v) const;

  void set_coefficient(VarId v, const Rational& c);
  void set_constant(const Rational& c) { constant_ = c; }

  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
  bool depends_on(VarId v) const { return coeffs_.count(v) != 0; }
  std::vector<VarId> variables() const;

  Rational evaluate(const std::map<VarId, Rational>& point) const;

  // Simultaneous substitution of variables by affine forms.
  LinForm substitute(const std::map<VarId, LinForm>& images) const;

  // Writes *this = scale * normalized, where the first coefficient of `normalized` is 1.
  // Requires a non-constant form.
  std::pair<Rational, LinForm> normalized() const;

  LinForm& operator+=(const LinForm& other);
  LinForm& operator-=(const LinForm& other);
  LinForm& operator*=(const Rational& s);

  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
  friend LinForm operator*(LinForm a, const Rational& s) { return a *= s; }
  friend LinForm operator*(const Rational& s, LinForm a) { return a *= s; }
  friend LinForm operator-(LinForm a) { return a *= Rational(-1); }

  friend bool operator==(const LinForm& a, const LinForm& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const LinForm& a, const LinForm& b);

  std::string to_string(const std::vector<std::string>* names = nullptr) const;

 private:
  std::map<VarId, Rational> coeffs_;
  Rational constant_ = 0;
};

}  // namespace jks
