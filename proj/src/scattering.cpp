#include "jks/scattering.hpp"

#include "jks/errors.hpp"
#include "jks/quiver_jk.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace jks {

namespace {

// Crossing a ray of direction r counterclockwise applies z^n -> z^n f^{<r,n>}.
constexpr Orientation kCounterclockwise = Orientation::Plus;

int pairing(const Direction& a, int n1, int n2) { return a[0] * n2 - a[1] * n1; }

// 0 for angles in [0, pi), 1 for [pi, 2pi).
int half_plane(const Direction& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

bool angle_less(const Direction& a, const Direction& b) {
  const int ha = half_plane(a);
  const int hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return static_cast<long long>(a[0]) * b[1] - static_cast<long long>(a[1]) * b[0] > 0;
}

TruncatedSeries shift_x(const TruncatedSeries& g, int dx, int dy) {
  TruncatedSeries out(g.ring());
  for (const auto& [exponent, c] : g.terms()) {
    auto e = exponent;
    e[0] += dx;
    e[1] += dy;
    out.add_term(e, c);
  }
  return out;
}

std::vector<Wall> loop_rays(const ScatteringDiagram& d) {
  std::vector<Wall> rays;
  for (const auto& w : d.walls) {
    rays.push_back({w.direction, WallSupport::Ray, w.function});
    if (w.support == WallSupport::Line)
      rays.push_back({Direction{-w.direction[0], -w.direction[1]}, WallSupport::Ray, w.function});
  }
  std::stable_sort(rays.begin(), rays.end(),
                   [](const Wall& a, const Wall& b) { return angle_less(a.direction, b.direction); });
  return rays;
}

void sort_walls(std::vector<Wall>& walls) {
  std::stable_sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) {
    if (a.support != b.support) return a.support == WallSupport::Line;
    return angle_less(a.direction, b.direction);
  });
}

}  // namespace

Direction primitive(int a, int b) {
  const int g = std::gcd(a, b);
  if (g == 0) throw Error(ErrorKind::InvalidInput, "zero direction");
  return {a / g, b / g};
}

const Wall* ScatteringDiagram::find(const Direction& d) const {
  for (const auto& w : walls)
    if (w.direction == d) return &w;
  return nullptr;
}

bool Automorphism::is_identity() const {
  const auto one = TruncatedSeries::constant(x_factor.ring(), 1);
  return x_factor == one && y_factor == one;
}

ScatteringDiagram init_bipartite(int l1, int l2, int cutoff) {
  if (l1 < 1 || l2 < 1) throw Error(ErrorKind::BadCutoff, "l1 and l2 must be at least 1");
  if (cutoff < 1) throw Error(ErrorKind::BadCutoff, "cutoff must be at least 1");
  ScatteringDiagram d;
  d.l1 = l1;
  d.l2 = l2;
  d.ring = SeriesRing::bipartite(l1, l2, cutoff);
  TruncatedSeries fx = TruncatedSeries::constant(d.ring, 1);
  TruncatedSeries fy = TruncatedSeries::constant(d.ring, 1);
  const auto one = TruncatedSeries::constant(d.ring, 1);
  for (int i = 0; i < l1; ++i)
    fx *= one + TruncatedSeries::param(d.ring, i) * TruncatedSeries::x(d.ring);
  for (int j = 0; j < l2; ++j)
    fy *= one + TruncatedSeries::param(d.ring, l1 + j) * TruncatedSeries::y(d.ring);
  d.walls.push_back({Direction{1, 0}, WallSupport::Line, fx});
  d.walls.push_back({Direction{0, 1}, WallSupport::Line, fy});
  return d;
}

TruncatedSeries cross_wall(const Wall& w, const TruncatedSeries& g, Orientation orientation) {
  const int sign = orientation == Orientation::Plus ? 1 : -1;
  const int ex = sign * pairing(w.direction, 1, 0);
  const int ey = sign * pairing(w.direction, 0, 1);
  const TruncatedSeries f = w.function.truncated(g.ring());
  return substitute_xy(g, pow(f, ex), pow(f, ey));
}

Automorphism loop_product(const ScatteringDiagram& d) {
  TruncatedSeries gx = TruncatedSeries::x(d.ring);
  TruncatedSeries gy = TruncatedSeries::y(d.ring);
  for (const auto& ray : loop_rays(d)) {
    gx = cross_wall(ray, gx, kCounterclockwise);
    gy = cross_wall(ray, gy, kCounterclockwise);
  }
  return {shift_x(gx, -1, 0), shift_x(gy, 0, -1)};
}

ScatteringDiagram scatter(const ScatteringDiagram& d0) {
  ScatteringDiagram d = d0;
  const int sigma = kCounterclockwise == Orientation::Plus ? 1 : -1;
  for (int degree = 1; degree <= d0.cutoff(); ++degree) {
    ScatteringDiagram truncated = d;
    truncated.ring = d.ring->with_cutoff(degree);
    for (auto& w : truncated.walls) w.function = w.function.truncated(truncated.ring);
    const Automorphism phi = loop_product(truncated);
    const auto one = TruncatedSeries::constant(truncated.ring, 1);
    const TruncatedSeries dx = phi.x_factor - one;
    const TruncatedSeries dy = phi.y_factor - one;
    for (const auto* delta : {&dx, &dy}) {
      const int v = delta->valuation();
      if (v >= 0 && v < degree) throw std::logic_error("scattering defect below the current degree");
    }
    std::map<TruncatedSeries::Exponent, std::pair<Rational, Rational>> defect;
    for (const auto& [e, c] : dx.terms()) defect[e].first = c;
    for (const auto& [e, c] : dy.terms()) defect[e].second = c;
    std::map<Direction, TruncatedSeries, bool (*)(const Direction&, const Direction&)> increments(angle_less);
    for (const auto& [e, cs] : defect) {
      const auto& [cx, cy] = cs;
      const Direction r = primitive(e[0], e[1]);
      if (cx * r[0] + cy * r[1] != 0) throw std::logic_error("scattering defect is not tangent to its ray");
      // A ray r with function 1 + c q changes x by sigma*<r,(1,0)>*c*q and y by sigma*<r,(0,1)>*c*q.
      const Rational c = r[1] != 0 ? Rational(cx / (sigma * r[1])) : Rational(-cy / (sigma * r[0]));
      auto it = increments.find(r);
      if (it == increments.end()) it = increments.emplace(r, TruncatedSeries::constant(d.ring, 1)).first;
      it->second.add_term(e, c);
    }
    for (auto& [r, inc] : increments) {
      auto wall = std::find_if(d.walls.begin(), d.walls.end(), [&](const Wall& w) {
        return w.direction == r && w.support == WallSupport::Ray;
      });
      if (wall == d.walls.end()) {
        d.walls.push_back({r, WallSupport::Ray, inc});
      } else {
        wall->function *= inc;
      }
    }
    sort_walls(d.walls);
  }
  return d;
}

Rational extract_cd(const ScatteringDiagram& d, const std::vector<int>& p1, const std::vector<int>& p2) {
  if (static_cast<int>(p1.size()) != d.l1 || static_cast<int>(p2.size()) != d.l2)
    throw Error(ErrorKind::InvalidInput, "dimension vector does not match the bipartite shape");
  for (int v : p1)
    if (v < 0) throw Error(ErrorKind::InvalidInput, "negative dimension entry");
  for (int v : p2)
    if (v < 0) throw Error(ErrorKind::InvalidInput, "negative dimension entry");
  const int a = std::accumulate(p1.begin(), p1.end(), 0);
  const int b = std::accumulate(p2.begin(), p2.end(), 0);
  if (a + b == 0) throw Error(ErrorKind::InvalidInput, "zero dimension vector");
  if (a + b > d.cutoff())
    throw Error(ErrorKind::CutoffTooSmall, "|d| = " + std::to_string(a + b) + " exceeds the cutoff " +
                                               std::to_string(d.cutoff()));
  const int k = std::gcd(a, b);
  const Wall* w = d.find(primitive(a, b));
  if (!w) return 0;
  TruncatedSeries::Exponent e{a, b};
  e.insert(e.end(), p1.begin(), p1.end());
  e.insert(e.end(), p2.begin(), p2.end());
  return log(w->function).coefficient(e) / k;
}

MainTheoremCheck verify_main_theorem(int l1, int l2, const std::vector<int>& p1, const std::vector<int>& p2,
                                     const Stability& zeta, int cutoff) {
  if (l1 < 1 || l2 < 1) throw Error(ErrorKind::InvalidInput, "l1 and l2 must be at least 1");
  const Quiver q = Quiver::complete_bipartite(l1, l2);
  if (static_cast<int>(p1.size()) != l1 || static_cast<int>(p2.size()) != l2)
    throw Error(ErrorKind::InvalidInput, "dimension vector does not match the bipartite shape");
  if (static_cast<int>(zeta.size()) != l1 + l2)
    throw Error(ErrorKind::InvalidInput, "stability vector does not match the bipartite shape");
  DimVector d(p1);
  d.insert(d.end(), p2.begin(), p2.end());
  for (int i = 1; i < l1; ++i)
    if (zeta[i] != zeta[0]) throw Error(ErrorKind::ValidationError, "stability is not constant on the sources");
  for (int j = 1; j < l2; ++j)
    if (zeta[l1 + j] != zeta[l1]) throw Error(ErrorKind::ValidationError, "stability is not constant on the sinks");
  if (std::all_of(zeta.begin(), zeta.end(), [](const Rational& z) { return z == 0; }))
    throw Error(ErrorKind::ValidationError, "stability is trivial");
  check_normalized(q, d, zeta);

  MainTheoremCheck out;
  out.lhs = extract_cd(scatter(init_bipartite(l1, l2, cutoff)), p1, p2);
  out.jk_ab_infinity = jk_ab_infinity(q, d, zeta).value;
  out.moduli_dimension = moduli_dimension(q, d);
  Rational dfact = 1;
  for (int v : d) dfact *= factorial(v);
  out.rhs = (out.moduli_dimension % 2 == 0 ? Rational(1) : Rational(-1)) * out.jk_ab_infinity / dfact;
  out.pass = out.lhs == out.rhs;
  return out;
}

}  // namespace jks
