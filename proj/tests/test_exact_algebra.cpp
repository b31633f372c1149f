#include "helpers.hpp"

#include "jks/errors.hpp"
#include "jks/residue.hpp"
#include "jks/series.hpp"

#include <doctest.h>

using namespace jks;
using namespace jks::test;

namespace {

constexpr VarId A = 0, B = 1, C = 2, W = 3;

Rational ir(const RationalExpr& f, std::vector<VarId> order) { return iterated_residue(f, order); }

// Random product of 2-5 linear forms in `vars` variables with exponents in {-2,-1,1}, with
// at least one pure pole per variable so that residues are usually nonzero.
RationalExpr random_expr(Gen& g, int vars) {
  RationalExpr f(g.rational(-4, 4, 3) + (g.coin() ? 0 : 1));
  if (f.is_zero()) f = RationalExpr(Q(1));
  for (int v = 0; v < vars; ++v) f *= pw(LinForm::variable(v), -g.integer(1, 2));
  const int extra = g.integer(1, 3);
  for (int i = 0; i < extra; ++i) {
    LinForm form(g.coin() ? Rational(0) : g.rational(-3, 3, 2));
    for (int v = 0; v < vars; ++v) form += LinForm::variable(v, Q(g.integer(-2, 2)));
    if (form.is_constant()) form += LinForm::variable(g.integer(0, vars - 1));
    const int choices[] = {-2, -1, 1};
    f *= pw(form, choices[g.integer(0, 2)]);
  }
  return f;
}

std::vector<VarId> identity_order(int n) {
  std::vector<VarId> o(n);
  for (int i = 0; i < n; ++i) o[i] = i;
  return o;
}

}  // namespace

TEST_CASE("rational strings are always p/q") {
  CHECK(to_string(Q(2)) == "2/1");
  CHECK(to_string(Q(0)) == "0/1");
  CHECK(to_string(Q(-6, 4)) == "-3/2");
  CHECK(parse_rational("3/6") == Q(1, 2));
  CHECK(parse_rational("-2") == Q(-2));
  CHECK(parse_rational("+7/1") == Q(7));
  CHECK(parse_rational("\xE2\x88\x92" "2/1") == Q(-2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("generalized binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(-2, 2) == 3);
  CHECK(factorial(4) == 24);
}

TEST_CASE("linear forms normalize with leading coefficient one") {
  const LinForm f = lf({{A, 2}, {B, -4}}, Q(6));
  const auto [scale, n] = f.normalized();
  CHECK(scale == 2);
  CHECK(n == lf({{A, 1}, {B, -2}}, Q(3)));
  CHECK(f.substitute({{A, lf({{B, 1}})}}) == lf({{B, -2}}, Q(6)));
  CHECK(f.evaluate({{A, Q(1)}, {B, Q(1, 2)}}) == 6);
}

TEST_CASE("rational expressions merge proportional factors and reject zero denominators") {
  RationalExpr f = pw(lf({{A, 2}, {B, 2}}), -1) * pw(lf({{A, 1}, {B, 1}}), 2);
  REQUIRE(f.factors().size() == 1);
  CHECK(f.factors()[0].second == 1);
  CHECK(f.evaluate({{A, Q(1)}, {B, Q(2)}}) == Q(3, 2));
  CHECK_THROWS_AS(pw(LinForm(), -1), Error);
  try {
    pw(LinForm(), -1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDenominator);
  }
  CHECK(pw(LinForm(Q(2)), -2).scalar() == Q(1, 4));
}

TEST_CASE("residue_step examples") {
  // Coefficient of v^{-1} of 1/(v(v-w)) with v innermost: -(1/w) from 1/(v-w) = -(1/w)(1+v/w+...).
  const RationalExpr r = residue_step(pw(lf({{A, 1}}), -1) * pw(lf({{A, 1}, {W, -1}}), -1), A);
  CHECK(r.evaluate({{W, Q(3)}}) == Q(-1, 3));
  CHECK(r.evaluate({{W, Q(-5, 2)}}) == Q(2, 5));
  CHECK(residue_step(pw(lf({{A, 1}}), -1), A).scalar() == 1);
  CHECK(residue_step(pw(lf({{A, 1}}, Q(1)), -1), A).is_zero());
}

TEST_CASE("iterated_residue examples") {
  const LinForm a = lf({{A, 1}}), b = lf({{B, 1}});
  CHECK(ir(pw(a, -1) * pw(b, -1), {A, B}) == 1);
  CHECK(ir(pw(a, -1) * pw(b, -1) * pw(a + b, -1), {A, B}) == 0);
  // -(1 - 1/v)^2 = -(v - 1)^2 / v^2
  CHECK(ir(pw(lf({{A, 1}}, Q(-1)), 2) * pw(a, -2) * Q(-1), {A}) == 2);
  CHECK_THROWS_AS(ir(pw(a, -1) * pw(b, -1), {A}), Error);
}

TEST_CASE("iterated residues agree with the sympy oracle") {
  // Values frozen from tests/oracles/residue_oracle.py.
  const LinForm a = lf({{A, 1}}), b = lf({{B, 1}}), c = lf({{C, 1}});
  const LinForm one(Q(1));
  CHECK(ir(pw(a, -2) * pw(a + b, -1) * pw(b, -1), {A, B}) == 0);
  CHECK(ir(pw(a, -2) * pw(a + b, -1) * pw(b, -1), {B, A}) == 0);
  CHECK(ir(pw(a + one, 3) * pw(a, -2) * pw(b, -1) * pw(b - a + one, -1), {A, B}) == 4);
  CHECK(ir(pw(a, -1) * pw(a + b, -1) * pw(a + b + c, -1), {A, B, C}) == 1);
  CHECK(ir(pw(a, -1) * pw(a + b, -1) * pw(a + b + c, -1), {C, B, A}) == 0);
  const RationalExpr mixed = RationalExpr(Polynomial(a + b * Q(2) + LinForm(Q(3)))) * pw(a, -1) * pw(b, -1) *
                             pw(a - b, -2);
  CHECK(ir(mixed, {A, B}) == 0);
  const RationalExpr units = pw(a * Q(2) + b, -1) * pw(a - b * Q(3), -1) * pw(b, -2);
  CHECK(ir(units, {A, B}) == 0);
  CHECK(ir(units, {B, A}) == 0);
  const RationalExpr affine = pw(a - one, 1) * pw(b - one, 1) * pw(a, -1) * pw(b, -1) *
                              pw(a + LinForm(Q(1, 3)), -1) * pw(a + b - LinForm(Q(1, 7)), -1);
  CHECK(ir(affine, {A, B}) == -21);
  const RationalExpr high = pw(a + b + one, 2) * pw(a, -3) * pw(b, -2) * pw(a * Q(2) - b + one, -1);
  CHECK(ir(high, {A, B}) == 9);
  CHECK(ir(high, {B, A}) == 9);
  const RationalExpr three = pw(one - a, 1) * pw(one - b - c, 1) * pw(a, -2) * pw(a - b, -1) * pw(b, -1) *
                             pw(b + c * Q(2), -1) * pw(c, -1);
  CHECK(ir(three, {A, B, C}) == 0);
  CHECK(ir(pw(one + a + b, 4) * pw(a, -2) * pw(b, -3), {A, B}) == 12);
  const RationalExpr chain = pw(a + b + LinForm(Q(2)), 2) * pw(a, -1) * pw(a + b, -1) * pw(b + c, -1) * pw(c, -1) *
                             pw(c + one, -1);
  CHECK(ir(chain, {A, B, C}) == -4);
  CHECK(ir(pw(a * Q(3) - b * Q(2), -1) * pw(b * Q(5) + LinForm(Q(1, 2)), -1) * pw(b, -1), {A, B}) == 0);
  CHECK(ir(pw(a + one, 1) * pw(a * Q(3) - b * Q(2), -1) * pw(a, -1) * pw(b, -1), {B, A}) == Q(1, 3));
}

TEST_CASE("change_vars_linear examples") {
  const LinForm u1 = lf({{A, 1}}), u2 = lf({{B, 1}});
  const RationalExpr f = pw(u1, -1) * pw(u1 + u2, -1);
  const RationalExpr g = change_vars_linear(f, {u1, u1 + u2});
  CHECK(g.evaluate({{A, Q(2)}, {B, Q(5)}}) == Q(1, 10));
  CHECK(ir(g, {A, B}) == 1);
  CHECK(change_vars_linear(f, {u1, u2}).evaluate({{A, Q(3)}, {B, Q(4)}}) == f.evaluate({{A, Q(3)}, {B, Q(4)}}));
  const RationalExpr scaled = change_vars_linear(f, {u1 * Q(7), u2 * Q(1, 7)});
  CHECK(ir(scaled, {A, B}) == ir(f, {A, B}));
  CHECK_THROWS_AS(change_vars_linear(f, {u1, u1 * Q(2)}), Error);
  try {
    change_vars_linear(f, {u1 + u2, u1 + u2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularBasis);
  }
}

TEST_CASE("property: iterated residues are linear") {
  Gen g(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = g.integer(1, 3);
    const RationalExpr f = random_expr(g, n), h = random_expr(g, n);
    const Rational a = g.rational(-5, 5), b = g.rational(-5, 5);
    const auto order = identity_order(n);
    CHECK(ir(f * a + h * b, order) == a * ir(f, order) + b * ir(h, order));
  }
}

TEST_CASE("property: change of variables by diagonal maps preserves IR_0") {
  Gen g(23);
  int nonzero = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.integer(1, 3);
    const RationalExpr f = random_expr(g, n);
    std::vector<LinForm> basis;
    for (int v = 0; v < n; ++v) basis.push_back(LinForm::variable(v, Q(g.nonzero(-9, 9), g.integer(1, 7))));
    const auto order = identity_order(n);
    const Rational before = ir(f, order);
    nonzero += before != 0;
    CHECK(ir(change_vars_linear(f, basis), order) == before);
  }
  CHECK(nonzero > 10);
}

TEST_CASE("property: unit factors cancel") {
  Gen g(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = g.integer(1, 3);
    const RationalExpr f = random_expr(g, n);
    LinForm unit(g.nonzero(-4, 4));
    for (int v = 0; v < n; ++v) unit += LinForm::variable(v, Q(g.integer(-3, 3)));
    const int e = g.nonzero(-3, 3);
    RationalExpr h = f;
    h *= pw(unit, e);
    h *= pw(unit, -e);
    CHECK(ir(h, identity_order(n)) == ir(f, identity_order(n)));
  }
}

TEST_CASE("series exp/log examples") {
  const auto ring = SeriesRing::make({"s", "t"}, 3);
  const auto x = TruncatedSeries::x(ring), y = TruncatedSeries::y(ring);
  const auto s = TruncatedSeries::param(ring, 0), t = TruncatedSeries::param(ring, 1);
  const auto one = TruncatedSeries::constant(ring, 1);
  const TruncatedSeries sx = s * x;
  const TruncatedSeries mercator = sx - sx * sx * Q(1, 2) + sx * sx * sx * Q(1, 3);
  CHECK(log(one + sx) == mercator);
  CHECK(exp(TruncatedSeries(ring)) == one);
  const auto ring4 = ring->with_cutoff(4);
  const auto g = TruncatedSeries::constant(ring4, 1) + (s * x + t * y).truncated(ring4);
  CHECK(exp(log(g)) == g);
  CHECK(series_exp_log(series_exp_log(g, SeriesDirection::Log), SeriesDirection::Exp) == g);
  CHECK_THROWS_AS(log(sx), Error);
  CHECK_THROWS_AS(exp(one), Error);
  try {
    log(x);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadConstantTerm);
  }
  CHECK(to_string(log(one + sx).coefficient({3, 0, 3, 0})) == "1/3");
  CHECK((one + s * x * y).to_string() == "1+s*x*y");
}

TEST_CASE("series truncate eagerly and invert") {
  const auto ring = SeriesRing::make({"s"}, 2);
  const auto s = TruncatedSeries::param(ring, 0), x = TruncatedSeries::x(ring);
  const auto one = TruncatedSeries::constant(ring, 1);
  const auto p = s * s * s;
  CHECK(p.is_zero());
  CHECK(pow(one + s * x, -1) == one - s * x + s * s * x * x);
  CHECK(pow(one + s * x, 2) * pow(one + s * x, -2) == one);
}

TEST_CASE("property: exp and log are inverse up to cutoff 6") {
  Gen g(99);
  const auto ring = SeriesRing::make({"s1", "s2", "t1"}, 6);
  for (int trial = 0; trial < 20; ++trial) {
    TruncatedSeries h(ring);
    const int terms = g.integer(1, 4);
    for (int i = 0; i < terms; ++i) {
      TruncatedSeries::Exponent e{g.integer(-1, 2), g.integer(-1, 2), g.integer(0, 2), g.integer(0, 2), g.integer(0, 1)};
      if (e[2] + e[3] + e[4] == 0) e[2] = 1;
      h.add_term(e, g.rational(-3, 3, 4));
    }
    CHECK(log(exp(h)) == h);
    const auto f = TruncatedSeries::constant(ring, 1) + h;
    CHECK(exp(log(f)) == f);
  }
}
