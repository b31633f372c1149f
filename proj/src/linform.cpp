#include "jks/linform.hpp"

#include "jks/errors.hpp"

#include <sstream>

namespace jks {

LinForm LinForm::variable(VarId v, const Rational& coefficient) {
  LinForm f;
  f.set_coefficient(v, coefficient);
  return f;
}

Rational LinForm::coefficient(VarId v) const {
  const auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinForm::set_coefficient(VarId v, const Rational& c) {
  if (c == 0)
    coeffs_.erase(v);
  else
    coeffs_[v] = c;
}

std::vector<VarId> LinForm::variables() const {
  std::vector<VarId> out;
  out.reserve(coeffs_.size());
  for (const auto& [v, c] : coeffs_) out.push_back(v);
  return out;
}

Rational LinForm::evaluate(const std::map<VarId, Rational>& point) const {
  Rational value = constant_;
  for (const auto& [v, c] : coeffs_) {
    const auto it = point.find(v);
    if (it == point.end())
      throw Error(ErrorKind::InvalidInput, "evaluation point misses variable " + std::to_string(v));
    value += c * it->second;
  }
  return value;
}

LinForm LinForm::substitute(const std::map<VarId, LinForm>& images) const {
  LinForm out(constant_);
  for (const auto& [v, c] : coeffs_) {
    const auto it = images.find(v);
    if (it == images.end())
      out += LinForm::variable(v, c);
    else
      out += it->second * c;
  }
  return out;
}

std::pair<Rational, LinForm> LinForm::normalized() const {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidInput, "cannot normalize a constant form");
  const Rational scale = coeffs_.begin()->second;
  LinForm n = *this;
  n *= Rational(1) / scale;
  return {scale, n};
}

LinForm& LinForm::operator+=(const LinForm& other) {
  for (const auto& [v, c] : other.coeffs_) set_coefficient(v, coefficient(v) + c);
  constant_ += other.constant_;
  return *this;
}

LinForm& LinForm::operator-=(const LinForm& other) {
  for (const auto& [v, c] : other.coeffs_) set_coefficient(v, coefficient(v) - c);
  constant_ -= other.constant_;
  return *this;
}

LinForm& LinForm::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [v, c] : coeffs_) c *= s;
  constant_ *= s;
  return *this;
}

bool operator<(const LinForm& a, const LinForm& b) {
  if (a.coeffs_ != b.coeffs_) return a.coeffs_ < b.coeffs_;
  return a.constant_ < b.constant_;
}

namespace {
std::string var_name(VarId v, const std::vector<std::string>* names) {
  if (names && v >= 0 && static_cast<std::size_t>(v) < names->size()) return (*names)[v];
  return "u" + std::to_string(v);
}

void append_term(std::ostringstream& os, const Rational& c, const std::string& symbol, bool first) {
  const bool negative = c < 0;
  const Rational a = negative ? Rational(-c) : c;
  if (first)
    os << (negative ? "-" : "");
  else
    os << (negative ? " - " : " + ");
  if (symbol.empty()) {
    os << a;
  } else {
    if (a != 1) os << a << "*";
    os << symbol;
  }
}
}  // namespace

std::string LinForm::to_string(const std::vector<std::string>* names) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    append_term(os, c, var_name(v, names), first);
    first = false;
  }
  if (constant_ != 0 || first) append_term(os, constant_, "", first);
  return os.str();
}

}  // namespace jks
