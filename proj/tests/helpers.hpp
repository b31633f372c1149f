#pragma once

#include "jks/linform.hpp"
#include "jks/quiver.hpp"
#include "jks/rational.hpp"
#include "jks/rational_expr.hpp"
#include "jks/series.hpp"

#include <initializer_list>
#include <map>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

namespace jks::test {

inline Rational Q(long long p, long long q = 1) { return Rational(p) / Rational(q); }

inline Stability stab(std::initializer_list<long long> v) {
  Stability s;
  for (long long x : v) s.push_back(Q(x));
  return s;
}

// sum c_v u_v + constant from {(v, c)} pairs.
inline LinForm lf(std::initializer_list<std::pair<VarId, long long>> coeffs, const Rational& constant = 0) {
  LinForm f(constant);
  for (const auto& [v, c] : coeffs) f += LinForm::variable(v, Q(c));
  return f;
}

inline RationalExpr pw(const LinForm& f, int e) { return RationalExpr::power(f, e); }

inline Quiver kronecker(int m) {
  std::vector<std::pair<int, int>> edges(m, {0, 1});
  return Quiver::from_edges(2, edges);
}

inline Quiver a2() { return Quiver::from_edges(2, {{0, 1}}); }
inline Quiver a3() { return Quiver::from_edges(3, {{0, 1}, {1, 2}}); }

// Deterministic generator for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  int nonzero(int lo, int hi) {
    for (;;)
      if (int v = integer(lo, hi); v != 0) return v;
  }
  Rational rational(int lo, int hi, int max_den = 5) { return Q(integer(lo, hi), integer(1, max_den)); }
  bool coin() { return integer(0, 1) == 1; }
};

// Coefficients with every parameter set to one variable u: (x-exp, y-exp, u-degree) -> value.
inline std::map<std::tuple<int, int, int>, Rational> specialize(const TruncatedSeries& f) {
  std::map<std::tuple<int, int, int>, Rational> out;
  for (const auto& [e, c] : f.terms()) out[{e[0], e[1], f.param_degree(e)}] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace jks::test
