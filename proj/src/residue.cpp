#include "jks/residue.hpp"

#include "jks/errors.hpp"
#include "jks/linalg.hpp"

#include <algorithm>

namespace jks {

namespace {

struct UnitFactor {
  Rational slope;   // coefficient of v
  LinForm rest;     // the form with v removed; nonzero
  int exponent;
  int max_order;    // highest power of v that can be drawn from this factor
};

// Calls visit(k) for every k with sum k = total and k[i] <= units[i].max_order.
template <class Visit>
void for_each_split(const std::vector<UnitFactor>& units, int total, std::vector<int>& k,
                    std::size_t index, Visit&& visit) {
  if (index == units.size()) {
    if (total == 0) visit(k);
    return;
  }
  const int cap = std::min(total, units[index].max_order);
  for (int ki = 0; ki <= cap; ++ki) {
    k[index] = ki;
    for_each_split(units, total - ki, k, index + 1, visit);
  }
  k[index] = 0;
}

}  // namespace

RationalExpr residue_step(const RationalExpr& f, VarId v) {
  if (f.is_zero()) return RationalExpr();
  const LinForm pure = LinForm::variable(v);
  int pole_exponent = 0;
  std::vector<UnitFactor> units;
  RationalExpr untouched(Rational(1));
  for (const auto& [form, e] : f.factors()) {
    if (form == pure) {
      pole_exponent = e;
    } else if (form.depends_on(v)) {
      LinForm rest = form;
      rest.set_coefficient(v, 0);
      units.push_back({form.coefficient(v), rest, e, 0});
    } else {
      untouched *= RationalExpr::power(form, e);
    }
  }
  // Coefficient of v^{-1} in v^{pole_exponent} * P(v) * prod units(v).
  const int needed = -1 - pole_exponent;
  if (needed < 0) return RationalExpr();
  for (auto& u : units) u.max_order = u.exponent > 0 ? std::min(u.exponent, needed) : needed;

  const std::vector<Polynomial> coeffs = f.numerator().coefficients_in(v);
  std::vector<std::vector<Polynomial>> rest_powers(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    rest_powers[i].push_back(Polynomial(Rational(1)));
    const Polynomial base(units[i].rest);
    for (int p = 1; p <= units[i].max_order; ++p) rest_powers[i].push_back(rest_powers[i].back() * base);
  }

  Polynomial numerator;
  std::vector<int> k(units.size(), 0);
  for (int j = 0; j <= needed && j < static_cast<int>(coeffs.size()); ++j) {
    if (coeffs[j].is_zero()) continue;
    for_each_split(units, needed - j, k, 0, [&](const std::vector<int>& split) {
      Rational c = 1;
      Polynomial term = coeffs[j];
      for (std::size_t i = 0; i < units.size(); ++i) {
        c *= binomial(units[i].exponent, split[i]) * jks::pow(units[i].slope, split[i]);
        // (M + a v)^e = sum_k binom(e,k) a^k v^k M^{e-k}; M^{e-k} = M^{e-K} * M^{K-k}.
        term *= rest_powers[i][units[i].max_order - split[i]];
      }
      if (c != 0) numerator += term * c;
    });
  }
  RationalExpr out(numerator);
  if (out.is_zero()) return out;
  for (const auto& u : units) out *= RationalExpr::power(u.rest, u.exponent - u.max_order);
  out *= untouched;
  return out;
}

Rational iterated_residue(const RationalExpr& f, const std::vector<VarId>& order) {
  RationalExpr g = f;
  for (VarId v : order) {
    g = residue_step(g, v);
    if (g.is_zero()) return 0;
  }
  if (!g.is_constant())
    throw Error(ErrorKind::InvalidInput, "iterated residue order misses variables; left with " + g.to_string());
  return g.scalar();
}

RationalExpr change_vars_linear(const RationalExpr& f, const std::vector<LinForm>& basis,
                                const std::vector<VarId>& coords) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (static_cast<Eigen::Index>(coords.size()) != n)
    throw Error(ErrorKind::SingularBasis, "basis size differs from the number of coordinates");
  Matrix<Rational> gamma(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (basis[i].constant() != 0)
      throw Error(ErrorKind::InvalidInput, "basis forms must be linear");
    for (VarId v : basis[i].variables())
      if (std::find(coords.begin(), coords.end(), v) == coords.end())
        throw Error(ErrorKind::SingularBasis, "basis form uses a variable outside the coordinates");
    for (Eigen::Index c = 0; c < n; ++c) gamma(i, c) = basis[i].coefficient(coords[c]);
  }
  const auto inv = inverse<Rational>(gamma);
  if (!inv) throw Error(ErrorKind::SingularBasis, "basis matrix is not invertible");
  std::map<VarId, LinForm> images;
  for (Eigen::Index c = 0; c < n; ++c) {
    LinForm image;
    for (Eigen::Index j = 0; j < n; ++j) image.set_coefficient(coords[j], (*inv)(c, j));
    images.emplace(coords[c], image);
  }
  RationalExpr out = f.substitute(images);
  out *= Rational(1) / determinant<Rational>(gamma);
  return out;
}

RationalExpr change_vars_linear(const RationalExpr& f, const std::vector<LinForm>& basis) {
  std::vector<VarId> coords;
  for (const auto& b : basis)
    for (VarId v : b.variables()) coords.push_back(v);
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return change_vars_linear(f, basis, coords);
}

}  // namespace jks
