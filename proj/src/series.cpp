#include "jks/series.hpp"

#include "jks/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace jks {

std::shared_ptr<const SeriesRing> SeriesRing::make(std::vector<std::string> params, int cutoff) {
  if (cutoff < 0) throw Error(ErrorKind::BadCutoff, "cutoff must be nonnegative");
  auto ring = std::make_shared<SeriesRing>();
  ring->params = std::move(params);
  ring->cutoff = cutoff;
  return ring;
}

std::shared_ptr<const SeriesRing> SeriesRing::bipartite(int l1, int l2, int cutoff) {
  std::vector<std::string> names;
  for (int i = 1; i <= l1; ++i) names.push_back("s" + std::to_string(i));
  for (int j = 1; j <= l2; ++j) names.push_back("t" + std::to_string(j));
  return make(std::move(names), cutoff);
}

std::shared_ptr<const SeriesRing> SeriesRing::with_cutoff(int k) const { return make(params, k); }

TruncatedSeries::TruncatedSeries(Ring ring) : ring_(std::move(ring)) {}

TruncatedSeries TruncatedSeries::constant(Ring ring, const Rational& c) {
  TruncatedSeries s(ring);
  s.add_term(Exponent(2 + ring->params.size(), 0), c);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(Ring ring, Exponent e, const Rational& c) {
  if (e.size() != 2 + ring->params.size())
    throw Error(ErrorKind::InvalidInput, "exponent vector has the wrong length");
  TruncatedSeries s(ring);
  s.add_term(e, c);
  return s;
}

TruncatedSeries TruncatedSeries::x(Ring ring) {
  Exponent e(2 + ring->params.size(), 0);
  e[0] = 1;
  return monomial(ring, e);
}

TruncatedSeries TruncatedSeries::y(Ring ring) {
  Exponent e(2 + ring->params.size(), 0);
  e[1] = 1;
  return monomial(ring, e);
}

TruncatedSeries TruncatedSeries::param(Ring ring, int index) {
  Exponent e(2 + ring->params.size(), 0);
  e.at(2 + index) = 1;
  return monomial(ring, e);
}

Rational TruncatedSeries::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int TruncatedSeries::param_degree(const Exponent& e) const {
  return std::accumulate(e.begin() + 2, e.end(), 0);
}

int TruncatedSeries::valuation() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    const int d = param_degree(e);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int degree) const {
  TruncatedSeries out(ring_);
  for (const auto& [e, c] : terms_)
    if (param_degree(e) == degree) out.terms_.emplace(e, c);
  return out;
}

TruncatedSeries TruncatedSeries::truncated(const Ring& smaller) const {
  if (smaller->params != ring_->params) throw Error(ErrorKind::InvalidInput, "incompatible series rings");
  TruncatedSeries out(smaller);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

void TruncatedSeries::add_term(const Exponent& e, const Rational& c) {
  if (c == 0 || param_degree(e) > ring_->cutoff) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TruncatedSeries::check_ring(const TruncatedSeries& other) const {
  if (ring_ != other.ring_ && !(*ring_ == *other.ring_))
    throw Error(ErrorKind::InvalidInput, "series from different rings");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& other) {
  check_ring(other);
  struct Entry {
    const Exponent* e;
    const Rational* c;
    int degree;
  };
  const auto collect = [&](const std::map<Exponent, Rational>& terms) {
    std::vector<Entry> v;
    v.reserve(terms.size());
    for (const auto& [e, c] : terms) v.push_back({&e, &c, param_degree(e)});
    std::stable_sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.degree < b.degree; });
    return v;
  };
  const auto a = collect(terms_);
  const auto b = collect(other.terms_);
  TruncatedSeries out(ring_);
  Exponent e(2 + ring_->params.size());
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      if (ta.degree + tb.degree > ring_->cutoff) break;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = (*ta.e)[i] + (*tb.e)[i];
      out.add_term(e, *ta.c * *tb.c);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<const Exponent*, const Rational*>> order;
  for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
  std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    const int da = param_degree(*a.first);
    const int db = param_degree(*b.first);
    if (da != db) return da < db;
    if (!std::equal(a.first->begin() + 2, a.first->end(), b.first->begin() + 2))
      return std::lexicographical_compare(b.first->begin() + 2, b.first->end(), a.first->begin() + 2, a.first->end());
    return *a.first < *b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : order) {
    const bool negative = *c < 0;
    const Rational a = negative ? Rational(-*c) : *c;
    os << (first ? (negative ? "-" : "") : (negative ? "-" : "+"));
    first = false;
    std::string mono;
    const auto append = [&](const std::string& name, int power) {
      if (power == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (power != 1) mono += "^" + std::to_string(power);
    };
    for (std::size_t i = 0; i < ring_->params.size(); ++i) append(ring_->params[i], (*e)[2 + i]);
    append("x", (*e)[0]);
    append("y", (*e)[1]);
    if (mono.empty())
      os << a;
    else if (a == 1)
      os << mono;
    else
      os << a << "*" << mono;
  }
  return os.str();
}

namespace {
// Splits g = c0 + h with c0 the coefficient of the unit monomial and h of positive degree.
std::pair<Rational, TruncatedSeries> split_unit(const TruncatedSeries& g) {
  TruncatedSeries h(g.ring());
  Rational c0 = 0;
  for (const auto& [e, c] : g.terms()) {
    if (g.param_degree(e) == 0) {
      if (std::any_of(e.begin(), e.begin() + 2, [](int k) { return k != 0; }))
        throw Error(ErrorKind::BadConstantTerm, "degree-zero part is not a constant");
      c0 = c;
    } else {
      h.add_term(e, c);
    }
  }
  return {c0, h};
}
}  // namespace

TruncatedSeries exp(const TruncatedSeries& g) {
  auto [c0, h] = split_unit(g);
  if (c0 != 0) throw Error(ErrorKind::BadConstantTerm, "exp needs a series without constant term");
  TruncatedSeries out = TruncatedSeries::constant(g.ring(), 1);
  TruncatedSeries power = TruncatedSeries::constant(g.ring(), 1);
  for (int n = 1; n <= g.ring()->cutoff; ++n) {
    power *= h;
    if (power.is_zero()) break;
    out += power * (Rational(1) / factorial(n));
  }
  return out;
}

TruncatedSeries log(const TruncatedSeries& g) {
  auto [c0, h] = split_unit(g);
  if (c0 != 1) throw Error(ErrorKind::BadConstantTerm, "log needs a series equal to 1 mod parameters");
  TruncatedSeries out(g.ring());
  TruncatedSeries power = TruncatedSeries::constant(g.ring(), 1);
  for (int n = 1; n <= g.ring()->cutoff; ++n) {
    power *= h;
    if (power.is_zero()) break;
    out += power * Rational(n % 2 == 1 ? 1 : -1, n);
  }
  return out;
}

TruncatedSeries series_exp_log(const TruncatedSeries& g, SeriesDirection direction) {
  return direction == SeriesDirection::Exp ? exp(g) : log(g);
}

TruncatedSeries pow(const TruncatedSeries& g, int e) {
  TruncatedSeries base = g;
  if (e < 0) {
    auto [c0, h] = split_unit(g);
    if (c0 != 1) throw Error(ErrorKind::BadConstantTerm, "inverse needs a series equal to 1 mod parameters");
    // 1/(1+h) = sum (-h)^n
    TruncatedSeries inv = TruncatedSeries::constant(g.ring(), 1);
    TruncatedSeries power = TruncatedSeries::constant(g.ring(), 1);
    for (int n = 1; n <= g.ring()->cutoff; ++n) {
      power *= h * Rational(-1);
      if (power.is_zero()) break;
      inv += power;
    }
    base = inv;
    e = -e;
  }
  TruncatedSeries result = TruncatedSeries::constant(g.ring(), 1);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

TruncatedSeries substitute_xy(const TruncatedSeries& g, const TruncatedSeries& u, const TruncatedSeries& v) {
  std::map<std::pair<int, int>, TruncatedSeries> groups;
  for (const auto& [e, c] : g.terms()) {
    auto it = groups.try_emplace({e[0], e[1]}, g.ring()).first;
    it->second.add_term(e, c);
  }
  std::map<int, TruncatedSeries> u_pow;
  std::map<int, TruncatedSeries> v_pow;
  const auto cached = [](std::map<int, TruncatedSeries>& cache, const TruncatedSeries& base, int k)
      -> const TruncatedSeries& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, pow(base, k)).first;
    return it->second;
  };
  TruncatedSeries out(g.ring());
  for (const auto& [xy, part] : groups) out += part * (cached(u_pow, u, xy.first) * cached(v_pow, v, xy.second));
  return out;
}

}  // namespace jks
