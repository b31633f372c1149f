#pragma once

#include "jks/quiver.hpp"
#include "jks/series.hpp"

#include <array>
#include <optional>
#include <vector>

namespace jks {

using Direction = std::array<int, 2>;

enum class WallSupport { Line, Ray };
enum class Orientation { Plus, Minus };

struct Wall {
  Direction direction{1, 0};  // primitive
  WallSupport support = WallSupport::Ray;
  TruncatedSeries function;
};

struct ScatteringDiagram {
  int l1 = 0;
  int l2 = 0;
  TruncatedSeries::Ring ring;
  std::vector<Wall> walls;  // initial lines first, then rays by increasing angle
  int cutoff() const { return ring->cutoff; }
  const Wall* find(const Direction& d) const;
};

// Action of an automorphism on the generators: x -> x*x_factor, y -> y*y_factor.
struct Automorphism {
  TruncatedSeries x_factor;
  TruncatedSeries y_factor;
  bool is_identity() const;
};

ScatteringDiagram init_bipartite(int l1, int l2, int cutoff);

// x -> x f^{+-<m,(1,0)>}, y -> y f^{+-<m,(0,1)>} applied to g, with <a,b> = a1*b2 - a2*b1.
TruncatedSeries cross_wall(const Wall& w, const TruncatedSeries& g, Orientation orientation);

// Composite of the crossings met by a counterclockwise loop around the origin, starting
// just clockwise of the positive x-axis.
Automorphism loop_product(const ScatteringDiagram& d);

// Consistent completion: adds rays order by order in the parameter degree.
ScatteringDiagram scatter(const ScatteringDiagram& d0);

// c_d for d = (P1, P2): the coefficient of s^P1 t^P2 x^{ka} y^{kb} in log f_(a,b), over k.
Rational extract_cd(const ScatteringDiagram& d, const std::vector<int>& p1, const std::vector<int>& p2);

struct MainTheoremCheck {
  bool pass = false;
  Rational lhs;            // c_d from scattering
  Rational rhs;            // (-1)^D / d! * jk_ab_infinity
  Rational jk_ab_infinity;
  int moduli_dimension = 0;
};

// Complete bipartite quiver, dimension (p1 | p2), zeta = (sources | sinks).
MainTheoremCheck verify_main_theorem(int l1, int l2, const std::vector<int>& p1, const std::vector<int>& p2,
                                     const Stability& zeta, int cutoff);

Direction primitive(int a, int b);

}  // namespace jks
