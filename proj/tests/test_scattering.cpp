#include "helpers.hpp"

#include "jks/errors.hpp"
#include "jks/scattering.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

using namespace jks;
using namespace jks::test;

namespace {

using Specialized = std::map<std::tuple<int, int, int>, Rational>;

bool in_open_first_quadrant(const Direction& d) { return d[0] > 0 && d[1] > 0; }

// All (P1, P2) with nonnegative entries and 1 <= |P1|+|P2| <= total.
void for_each_dimension(int l1, int l2, int total, const std::function<void(std::vector<int>, std::vector<int>)>& fn) {
  std::vector<int> v(l1 + l2, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == l1 + l2) {
      if (left < total) fn({v.begin(), v.begin() + l1}, {v.begin() + l1, v.end()});
      return;
    }
    for (int e = 0; e <= left; ++e) {
      v[pos] = e;
      rec(pos + 1, left - e);
    }
    v[pos] = 0;
  };
  rec(0, total);
}

int total(const std::vector<int>& p) { return std::accumulate(p.begin(), p.end(), 0); }

TruncatedSeries one(const TruncatedSeries::Ring& r) { return TruncatedSeries::constant(r, 1); }

// Oracle output, frozen: for each ray, f specialized at s_i = t_j = u.
struct Frozen {
  int l1, l2, cutoff;
  std::vector<std::pair<Direction, Specialized>> rays;
};

std::vector<Frozen> frozen_diagrams() {
  return {
      {1, 1, 6, {{{1, 1}, {{{0, 0, 0}, Q(1)}, {{1, 1, 2}, Q(1)}}}}},
      {2, 1, 4,
       {{{2, 1}, {{{0, 0, 0}, Q(1)}, {{2, 1, 3}, Q(1)}}},
        {{1, 1}, {{{0, 0, 0}, Q(1)}, {{1, 1, 2}, Q(2)}, {{2, 2, 4}, Q(1)}}}}},
      {2, 2, 4,
       {{{2, 1}, {{{0, 0, 0}, Q(1)}, {{2, 1, 3}, Q(2)}}},
        {{1, 1}, {{{0, 0, 0}, Q(1)}, {{1, 1, 2}, Q(4)}, {{2, 2, 4}, Q(10)}}},
        {{1, 2}, {{{0, 0, 0}, Q(1)}, {{1, 2, 3}, Q(2)}}}}},
      {3, 2, 5,
       {{{3, 1}, {{{0, 0, 0}, Q(1)}, {{3, 1, 4}, Q(2)}}},
        {{2, 1}, {{{0, 0, 0}, Q(1)}, {{2, 1, 3}, Q(6)}}},
        {{3, 2}, {{{0, 0, 0}, Q(1)}, {{3, 2, 5}, Q(14)}}},
        {{1, 1}, {{{0, 0, 0}, Q(1)}, {{1, 1, 2}, Q(6)}, {{2, 2, 4}, Q(27)}}},
        {{2, 3}, {{{0, 0, 0}, Q(1)}, {{2, 3, 5}, Q(6)}}},
        {{1, 2}, {{{0, 0, 0}, Q(1)}, {{1, 2, 3}, Q(3)}}}}},
  };
}

}  // namespace

TEST_CASE("init_bipartite examples") {
  const auto d = init_bipartite(1, 1, 3);
  REQUIRE(d.walls.size() == 2);
  CHECK(d.walls[0].direction == Direction{1, 0});
  CHECK(d.walls[0].support == WallSupport::Line);
  CHECK(d.walls[0].function.to_string() == "1+s1*x");
  CHECK(d.walls[1].direction == Direction{0, 1});
  CHECK(d.walls[1].function.to_string() == "1+t1*y");

  const auto d2 = init_bipartite(2, 1, 3);
  const auto& r = d2.ring;
  const auto expected = (one(r) + TruncatedSeries::param(r, 0) * TruncatedSeries::x(r)) *
                        (one(r) + TruncatedSeries::param(r, 1) * TruncatedSeries::x(r));
  CHECK(d2.find({1, 0})->function == expected);

  CHECK_THROWS_AS(init_bipartite(0, 1, 3), Error);
  CHECK_THROWS_AS(init_bipartite(1, 1, 0), Error);
  try {
    init_bipartite(1, 1, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadCutoff);
  }
}

TEST_CASE("cross_wall examples") {
  const auto d = init_bipartite(1, 1, 4);
  const Wall& w = d.walls[0];
  const auto& r = d.ring;
  const auto x = TruncatedSeries::x(r), y = TruncatedSeries::y(r);
  CHECK(cross_wall(w, y, Orientation::Plus) == y * w.function);
  CHECK(cross_wall(w, x, Orientation::Plus) == x);
  CHECK(cross_wall(w, y, Orientation::Minus) == y * pow(w.function, -1));

  Gen g(71);
  for (int trial = 0; trial < 20; ++trial) {
    TruncatedSeries h(r);
    for (int k = 0; k < 4; ++k)
      h.add_term({g.integer(-2, 2), g.integer(-2, 2), g.integer(0, 2), g.integer(0, 2)}, g.rational(-3, 3));
    for (const Wall& wall : d.walls) {
      CHECK(cross_wall(wall, cross_wall(wall, h, Orientation::Plus), Orientation::Minus) == h);
      CHECK(cross_wall(wall, cross_wall(wall, h, Orientation::Minus), Orientation::Plus) == h);
    }
  }
}

TEST_CASE("loop_product examples") {
  ScatteringDiagram empty = init_bipartite(1, 1, 3);
  empty.walls.clear();
  CHECK(loop_product(empty).is_identity());

  const auto d = init_bipartite(1, 1, 4);
  const Automorphism a = loop_product(d);
  CHECK_FALSE(a.is_identity());
  const auto dx = a.x_factor - one(d.ring);
  const auto dy = a.y_factor - one(d.ring);
  CHECK(dx.valuation() == 2);
  CHECK(dy.valuation() == 2);
  for (const auto* part : {&dx, &dy}) {
    const auto lowest = part->homogeneous_part(2);
    CHECK_FALSE(lowest.is_zero());
    for (const auto& [e, c] : lowest.terms()) {
      CHECK(e[2] == 1);
      CHECK(e[3] == 1);
    }
  }
  CHECK(loop_product(scatter(d)).is_identity());
}

TEST_CASE("scatter examples") {
  for (int k = 2; k <= 8; ++k) {
    const auto d = scatter(init_bipartite(1, 1, k));
    REQUIRE(d.walls.size() == 3);
    const Wall* w = d.find({1, 1});
    REQUIRE(w != nullptr);
    CHECK(w->support == WallSupport::Ray);
    CHECK(w->function.to_string() == "1+s1*t1*x*y");
  }

  const auto d = scatter(init_bipartite(2, 1, 3));
  const auto& r = d.ring;
  const auto x = TruncatedSeries::x(r), y = TruncatedSeries::y(r);
  const auto s1 = TruncatedSeries::param(r, 0), s2 = TruncatedSeries::param(r, 1), t1 = TruncatedSeries::param(r, 2);
  REQUIRE(d.find({1, 1}) != nullptr);
  REQUIRE(d.find({2, 1}) != nullptr);
  CHECK(d.find({1, 1})->function == (one(r) + s1 * t1 * x * y) * (one(r) + s2 * t1 * x * y));
  CHECK(d.find({2, 1})->function == one(r) + s1 * s2 * t1 * x * x * y);
  CHECK(d.walls.size() == 4);
}

TEST_CASE("scatter matches the frozen consistency oracle") {
  for (const auto& fx : frozen_diagrams()) {
    CAPTURE(fx.l1);
    CAPTURE(fx.l2);
    const auto d = scatter(init_bipartite(fx.l1, fx.l2, fx.cutoff));
    int rays = 0;
    for (const auto& w : d.walls) rays += w.support == WallSupport::Ray;
    CHECK(rays == static_cast<int>(fx.rays.size()));
    for (const auto& [dir, f] : fx.rays) {
      CAPTURE(dir[0]);
      CAPTURE(dir[1]);
      const Wall* w = d.find(dir);
      REQUIRE(w != nullptr);
      CHECK(specialize(w->function) == f);
    }
  }
}

TEST_CASE("extract_cd examples") {
  const auto pent = scatter(init_bipartite(1, 1, 4));
  CHECK(extract_cd(pent, {1}, {1}) == 1);
  CHECK(extract_cd(pent, {2}, {2}) == Q(-1, 4));
  CHECK(extract_cd(pent, {2}, {1}) == 0);
  CHECK(extract_cd(pent, {1}, {0}) == 1);

  const auto d21 = scatter(init_bipartite(2, 1, 3));
  CHECK(extract_cd(d21, {1, 1}, {1}) == 1);
  CHECK(extract_cd(d21, {1, 0}, {1}) == 1);

  try {
    extract_cd(pent, {3}, {2});
    FAIL("expected CutoffTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CutoffTooSmall);
  }
  CHECK_THROWS_AS(extract_cd(pent, {1, 1}, {1}), Error);
  CHECK_THROWS_AS(extract_cd(pent, {-1}, {1}), Error);
  CHECK_THROWS_AS(extract_cd(pent, {0}, {0}), Error);
}

TEST_CASE("property: completed diagrams are consistent") {
  for (int l1 = 1; l1 <= 3; ++l1)
    for (int l2 = 1; l2 <= 3; ++l2)
      for (int k = 1; k <= 5; ++k) {
        CAPTURE(l1);
        CAPTURE(l2);
        CAPTURE(k);
        const auto d = scatter(init_bipartite(l1, l2, k));
        CHECK(loop_product(d).is_identity());
        for (const auto& w : d.walls) {
          if (w.support == WallSupport::Line) continue;
          CHECK(in_open_first_quadrant(w.direction));
          CHECK(std::gcd(w.direction[0], w.direction[1]) == 1);
          // log f is supported on positive multiples of the direction.
          const auto logf = log(w.function);
          for (const auto& [e, c] : logf.terms()) {
            CHECK(e[0] * w.direction[1] == e[1] * w.direction[0]);
            CHECK(e[0] + e[1] > 0);
          }
        }
      }
}

TEST_CASE("property: scatter is idempotent and coherent across cutoffs") {
  for (auto [l1, l2, k] : {std::array<int, 3>{1, 1, 5}, {2, 1, 4}, {2, 2, 3}, {3, 1, 4}, {1, 3, 3}}) {
    CAPTURE(l1);
    CAPTURE(l2);
    const auto d = scatter(init_bipartite(l1, l2, k));
    const auto again = scatter(d);
    REQUIRE(again.walls.size() == d.walls.size());
    for (std::size_t i = 0; i < d.walls.size(); ++i) {
      CHECK(again.walls[i].direction == d.walls[i].direction);
      CHECK(again.walls[i].function == d.walls[i].function);
    }
    const auto bigger = scatter(init_bipartite(l1, l2, k + 1));
    for_each_dimension(l1, l2, k, [&](std::vector<int> p1, std::vector<int> p2) {
      if (total(p1) + total(p2) == 0) return;
      CHECK(extract_cd(d, p1, p2) == extract_cd(bigger, p1, p2));
    });
  }
}

TEST_CASE("property: permuting parameters permutes c_d") {
  const int l1 = 3, l2 = 2, k = 5;
  const auto d = scatter(init_bipartite(l1, l2, k));
  for_each_dimension(l1, l2, k, [&](std::vector<int> p1, std::vector<int> p2) {
    if (total(p1) + total(p2) == 0) return;
    const Rational c = extract_cd(d, p1, p2);
    auto q1 = p1;
    std::rotate(q1.begin(), q1.begin() + 1, q1.end());
    CHECK(extract_cd(d, q1, p2) == c);
    std::swap(q1[0], q1[1]);
    CHECK(extract_cd(d, q1, p2) == c);
    CHECK(extract_cd(d, p1, {p2[1], p2[0]}) == c);
  });
}

TEST_CASE("property: swapping the roles of x and y mirrors the diagram") {
  const auto d = scatter(init_bipartite(3, 2, 4));
  const auto e = scatter(init_bipartite(2, 3, 4));
  for_each_dimension(3, 2, 4, [&](std::vector<int> p1, std::vector<int> p2) {
    if (total(p1) + total(p2) == 0) return;
    CHECK(extract_cd(d, p1, p2) == extract_cd(e, p2, p1));
  });
}

TEST_CASE("verify_main_theorem examples") {
  const auto k21 = verify_main_theorem(2, 1, {1, 1}, {1}, stab({1, 1, -2}), 3);
  CHECK(k21.pass);
  CHECK(k21.lhs == 1);
  CHECK(k21.rhs == 1);
  CHECK(k21.moduli_dimension == 0);

  const auto k11 = verify_main_theorem(1, 1, {1}, {1}, stab({1, -1}), 2);
  CHECK(k11.pass);
  CHECK(k11.lhs == 1);

  try {
    verify_main_theorem(2, 2, {1, 1}, {1, 1}, stab({1, 1, -1, -1}), 4);
    FAIL("expected a non-regular stability error");
  } catch (const NonRegularStabilityError& e) {
    CHECK(e.kind() == ErrorKind::NonRegularStability);
    CHECK_FALSE(e.witness().span.empty());
  }
}

TEST_CASE("verify_main_theorem on further fixtures") {
  CHECK(verify_main_theorem(1, 1, {2}, {1}, stab({1, -2}), 3).pass);
  CHECK(verify_main_theorem(1, 1, {3}, {2}, stab({2, -3}), 5).pass);
  CHECK(verify_main_theorem(2, 1, {2, 1}, {1}, stab({1, 1, -3}), 4).pass);
  CHECK(verify_main_theorem(1, 1, {2}, {1}, stab({1, -2}), 3).lhs == 0);
  CHECK_THROWS_AS(verify_main_theorem(1, 1, {2}, {2}, stab({1, -1}), 4), NonRegularStabilityError);
  CHECK_THROWS_AS(verify_main_theorem(2, 1, {1, 1}, {2}, stab({2, 2, -2}), 4), NonRegularStabilityError);
}

TEST_CASE("verify_main_theorem input validation") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidInput;
  };
  CHECK(kind_of([] { verify_main_theorem(2, 1, {1, 1}, {1}, stab({2, 0, -2}), 3); }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { verify_main_theorem(2, 1, {1, 1}, {1}, stab({0, 0, 0}), 3); }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { verify_main_theorem(2, 1, {1, 1}, {1}, stab({1, 1, -1}), 3); }) == ErrorKind::NotNormalized);
  CHECK_THROWS_AS(verify_main_theorem(2, 1, {1, 1}, {1}, stab({1, -1}), 3), Error);
}
