#include "jks/polynomial.hpp"

#include "jks/errors.hpp"

#include <algorithm>
#include <sstream>

namespace jks {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial::Polynomial(const LinForm& form) : Polynomial(form.constant()) {
  for (const auto& [v, c] : form.coefficients()) terms_.emplace(Monomial{{v, 1}}, c);
}

Polynomial Polynomial::variable(VarId v) {
  Polynomial p;
  p.terms_.emplace(Monomial{{v, 1}}, Rational(1));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  const auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<VarId> Polynomial::variables() const {
  std::vector<VarId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Polynomial::degree_in(VarId v) const {
  int deg = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [w, e] : m)
      if (w == v) deg = std::max(deg, e);
  return deg;
}

std::vector<Polynomial> Polynomial::coefficients_in(VarId v) const {
  std::vector<Polynomial> out(static_cast<std::size_t>(degree_in(v)) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    int e = 0;
    for (const auto& pair : m) {
      if (pair.first == v)
        e = pair.second;
      else
        rest.push_back(pair);
    }
    out[e].add_term(rest, c);
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<VarId, Rational>& point) const {
  Rational value = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      const auto it = point.find(v);
      if (it == point.end())
        throw Error(ErrorKind::InvalidInput, "evaluation point misses variable " + std::to_string(v));
      t *= jks::pow(it->second, e);
    }
    value += t;
  }
  return value;
}

Polynomial Polynomial::substitute(const std::map<VarId, LinForm>& images) const {
  std::map<std::pair<VarId, int>, Polynomial> cache;
  const auto power_of = [&](VarId v, int e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto img = images.find(v);
    Polynomial base = img == images.end() ? Polynomial::variable(v) : Polynomial(img->second);
    return cache.emplace(key, base.pow(e)).first->second;
  };
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial t(c);
    for (const auto& [v, e] : m) t *= power_of(v, e);
    out += t;
  }
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::InvalidInput, "negative polynomial power");
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  Polynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
  terms_ = std::move(out.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::string Polynomial::to_string(const std::vector<std::string>* names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational a = negative ? Rational(-c) : c;
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    std::string mono;
    for (const auto& [v, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += (names && v >= 0 && static_cast<std::size_t>(v) < names->size())
                  ? (*names)[v]
                  : "u" + std::to_string(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      os << a;
    else if (a == 1)
      os << mono;
    else
      os << a << "*" << mono;
  }
  return os.str();
}

}  // namespace jks
