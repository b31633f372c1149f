#pragma once

#include "jks/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace jks {

// Laurent variables x, y and nilpotent parameters truncated at total degree `cutoff`.
struct SeriesRing {
  std::vector<std::string> params;
  int cutoff = 0;

  static std::shared_ptr<const SeriesRing> make(std::vector<std::string> params, int cutoff);
  // Parameters s1..s{l1}, t1..t{l2}.
  static std::shared_ptr<const SeriesRing> bipartite(int l1, int l2, int cutoff);
  std::shared_ptr<const SeriesRing> with_cutoff(int cutoff) const;

  friend bool operator==(const SeriesRing& a, const SeriesRing& b) {
    return a.params == b.params && a.cutoff == b.cutoff;
  }
};

class TruncatedSeries {
 public:
  // Exponent layout: [x, y, p_0, ..., p_{n-1}].
  using Exponent = std::vector<int>;
  using Ring = std::shared_ptr<const SeriesRing>;

  explicit TruncatedSeries(Ring ring);

  static TruncatedSeries constant(Ring ring, const Rational& c);
  static TruncatedSeries monomial(Ring ring, Exponent e, const Rational& c = 1);
  static TruncatedSeries x(Ring ring);
  static TruncatedSeries y(Ring ring);
  static TruncatedSeries param(Ring ring, int index);

  const Ring& ring() const { return ring_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  Rational coefficient(const Exponent& e) const;
  int param_degree(const Exponent& e) const;
  bool is_zero() const { return terms_.empty(); }

  // Lowest parameter degree among the terms, or -1 for the zero series.
  int valuation() const;
  // Terms of parameter degree exactly `degree`.
  TruncatedSeries homogeneous_part(int degree) const;
  TruncatedSeries truncated(const Ring& smaller) const;

  void add_term(const Exponent& e, const Rational& c);

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const Rational& s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) { return a *= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return *a.ring_ == *b.ring_ && a.terms_ == b.terms_;
  }

  // Human-readable form such as "1 + s1*t1*x*y"; terms ordered by parameter degree.
  std::string to_string() const;

 private:
  void check_ring(const TruncatedSeries& other) const;
  Ring ring_;
  std::map<Exponent, Rational> terms_;
};

// Truncated exponential; requires every term to have positive parameter degree.
TruncatedSeries exp(const TruncatedSeries& g);
// Truncated logarithm; requires g = 1 + (terms of positive parameter degree).
TruncatedSeries log(const TruncatedSeries& g);
enum class SeriesDirection { Exp, Log };
TruncatedSeries series_exp_log(const TruncatedSeries& g, SeriesDirection direction);

// g^e for any integer e; negative powers require g = 1 mod parameters.
TruncatedSeries pow(const TruncatedSeries& g, int e);

// Applies x -> x*u, y -> y*v to g. u and v must be 1 mod parameters.
TruncatedSeries substitute_xy(const TruncatedSeries& g, const TruncatedSeries& u, const TruncatedSeries& v);

}  // namespace jks
