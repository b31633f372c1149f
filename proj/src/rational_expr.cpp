#include "jks/rational_expr.hpp"

#include "jks/errors.hpp"

#include <algorithm>
#include <sstream>

namespace jks {

namespace {
auto find_factor(std::vector<RationalExpr::Factor>& factors, const LinForm& form) {
  return std::lower_bound(factors.begin(), factors.end(), form,
                          [](const RationalExpr::Factor& f, const LinForm& l) { return f.first < l; });
}
}  // namespace

RationalExpr RationalExpr::power(const LinForm& form, int exponent) {
  RationalExpr r(Rational(1));
  r.multiply_factor(form, exponent);
  return r;
}

void RationalExpr::multiply_factor(const LinForm& form, int exponent) {
  if (exponent == 0) return;
  if (form.is_constant()) {
    if (form.constant() == 0) {
      if (exponent < 0) throw Error(ErrorKind::ZeroDenominator, "zero form in a denominator");
      numerator_ = Polynomial();
      factors_.clear();
      return;
    }
    numerator_ *= jks::pow(form.constant(), exponent);
    return;
  }
  auto [scale, normal] = form.normalized();
  numerator_ *= jks::pow(scale, exponent);
  if (numerator_.is_zero()) {
    factors_.clear();
    return;
  }
  auto it = find_factor(factors_, normal);
  if (it != factors_.end() && it->first == normal) {
    it->second += exponent;
    if (it->second == 0) factors_.erase(it);
  } else {
    factors_.insert(it, {std::move(normal), exponent});
  }
}

Rational RationalExpr::scalar() const {
  if (!is_constant()) throw Error(ErrorKind::InvalidInput, "expression is not constant: " + to_string());
  return numerator_.constant_term();
}

std::vector<VarId> RationalExpr::variables() const {
  std::vector<VarId> out = numerator_.variables();
  for (const auto& [form, e] : factors_)
    for (VarId v : form.variables()) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational RationalExpr::evaluate(const std::map<VarId, Rational>& point) const {
  Rational value = numerator_.evaluate(point);
  for (const auto& [form, e] : factors_) {
    const Rational v = form.evaluate(point);
    if (v == 0 && e < 0) throw Error(ErrorKind::ZeroDenominator, "evaluation on a pole");
    value *= jks::pow(v, e);
  }
  return value;
}

RationalExpr RationalExpr::substitute(const std::map<VarId, LinForm>& images) const {
  RationalExpr out(numerator_.substitute(images));
  std::vector<std::pair<LinForm, int>> pending;
  for (const auto& [form, e] : factors_) pending.emplace_back(form.substitute(images), e);
  // Denominators first, so a vanishing denominator is reported even if the numerator dies.
  for (const auto& [form, e] : pending)
    if (e < 0 && form.is_zero()) throw Error(ErrorKind::ZeroDenominator, "substitution kills a denominator");
  for (const auto& [form, e] : pending) out.multiply_factor(form, e);
  return out;
}

RationalExpr RationalExpr::pow(int e) const {
  if (e < 0 && is_zero()) throw Error(ErrorKind::ZeroDenominator, "inverse of zero");
  RationalExpr out(Rational(1));
  if (e == 0) return out;
  if (numerator_.is_constant()) {
    out.numerator_ = Polynomial(jks::pow(numerator_.constant_term(), e));
  } else {
    if (e < 0) throw Error(ErrorKind::InvalidInput, "negative power of a non-factored numerator");
    out.numerator_ = numerator_.pow(e);
  }
  for (const auto& [form, k] : factors_) out.factors_.emplace_back(form, k * e);
  return out;
}

RationalExpr& RationalExpr::operator*=(const RationalExpr& other) {
  numerator_ *= other.numerator_;
  if (numerator_.is_zero()) {
    factors_.clear();
    return *this;
  }
  for (const auto& [form, e] : other.factors_) {
    auto it = find_factor(factors_, form);
    if (it != factors_.end() && it->first == form) {
      it->second += e;
      if (it->second == 0) factors_.erase(it);
    } else {
      factors_.insert(it, {form, e});
    }
  }
  return *this;
}

RationalExpr& RationalExpr::operator*=(const Rational& s) {
  numerator_ *= s;
  if (numerator_.is_zero()) factors_.clear();
  return *this;
}

RationalExpr& RationalExpr::operator/=(const RationalExpr& other) {
  return *this *= other.pow(-1);
}

RationalExpr sum(const std::vector<RationalExpr>& terms) {
  std::map<LinForm, int> lowest;
  std::vector<const RationalExpr*> live;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    live.push_back(&t);
  }
  if (live.empty()) return RationalExpr();
  for (const auto* t : live)
    for (const auto& [form, e] : t->factors()) lowest.emplace(form, 0);
  for (auto& [form, low] : lowest) {
    bool first = true;
    for (const auto* t : live) {
      int e = 0;
      for (const auto& [f, k] : t->factors())
        if (f == form) e = k;
      low = first ? e : std::min(low, e);
      first = false;
    }
  }
  std::map<std::pair<LinForm, int>, Polynomial> powers;
  const auto power_of = [&](const LinForm& form, int k) -> const Polynomial& {
    auto key = std::make_pair(form, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, Polynomial(form).pow(k)).first->second;
  };
  Polynomial numerator;
  for (const auto* t : live) {
    Polynomial p = t->numerator();
    std::map<LinForm, int> own;
    for (const auto& [f, k] : t->factors()) own.emplace(f, k);
    for (const auto& [form, low] : lowest) {
      const auto it = own.find(form);
      const int e = it == own.end() ? 0 : it->second;
      if (e - low > 0) p *= power_of(form, e - low);
    }
    numerator += p;
  }
  RationalExpr out(numerator);
  if (out.is_zero()) return out;
  for (const auto& [form, low] : lowest)
    if (low != 0) out.factors_.emplace_back(form, low);
  return out;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) { return sum({a, b}); }
RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return sum({a, -b}); }

std::string RationalExpr::to_string(const std::vector<std::string>* names) const {
  std::ostringstream os;
  const bool compound = numerator_.terms().size() > 1;
  os << (compound ? "(" : "") << numerator_.to_string(names) << (compound ? ")" : "");
  for (const auto& [form, e] : factors_) {
    os << "*(" << form.to_string(names) << ")";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace jks
