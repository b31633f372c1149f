#pragma once

#include "jks/linalg.hpp"
#include "jks/quiver.hpp"
#include "jks/rational_expr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jks {

using RVector = Vector<Rational>;
using RMatrix = Matrix<Rational>;

// Coordinate u_{vertex,index} (index is 0-based).
struct Coordinate {
  int vertex = 0;
  int index = 0;
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

struct Weight {
  LinForm form;         // u_{h,j} - u_{t,i} with the reference coordinate set to 0
  int multiplicity = 1;
  Rational rcharge;
  int source_arrow = 0;  // original arrow (split mode) or reduced arrow (literal mode)
  int tail_index = 0;
  int head_index = 0;
};

struct Root {
  LinForm form;  // u_{v,i} - u_{v,j}
  int vertex = 0;
  int i = 0;
  int j = 0;
};

struct RChargeSpec {
  std::vector<Rational> values;  // one per arrow (split) or per reduced arrow (literal)
  std::optional<std::uint64_t> seed;

  static RChargeSpec explicit_values(std::vector<Rational> v) { return {std::move(v), std::nullopt}; }
  static RChargeSpec seeded(std::uint64_t s) { return {{}, s}; }
};

struct Arrangement {
  int dimension = 0;
  std::vector<Coordinate> coordinates;  // variable k <-> coordinates[k]
  Coordinate reference;
  bool split = true;
  std::vector<Weight> weights;
  std::vector<Root> roots;
  std::vector<Rational> arrow_rcharges;  // the sampled or given per-arrow values

  std::vector<VarId> coords() const;
  std::size_t hyperplane_count() const { return weights.size() + roots.size(); }
  // Affine form of hyperplane h: weights first (rho + R), then roots (r - 1).
  LinForm hyperplane(std::size_t h) const;
  // Linear part of hyperplane h as a vector in coordinate order.
  RVector direction(std::size_t h) const;
  bool is_weight(std::size_t h) const { return h < weights.size(); }
  std::string hyperplane_label(std::size_t h, const Quiver& q) const;
};

// Default reference: first coordinate of the last vertex in the support.
Arrangement build_arrangement(const Quiver& q, const DimVector& d, const RChargeSpec& rcharges,
                              std::optional<Coordinate> reference = std::nullopt, bool split = true);

// Same arrangement with every R-charge multiplied by lambda.
Arrangement scale_rcharges(Arrangement a, const Rational& lambda);

// The deterministic sampler behind seeded R-charges: numerators in [1, 2^31] over 2^31.
std::vector<Rational> sample_rcharges(std::uint64_t seed, std::size_t count, int attempt);

struct SingularPoint {
  std::vector<Rational> location;
  std::vector<std::size_t> active;  // hyperplane ids vanishing at the point
};

// Isolated intersection points, sorted by location. Throws DegenerateRCharges when two
// hyperplanes coincide or, without roots, an active set has more than n elements.
std::vector<SingularPoint> singular_points(const Arrangement& a);

RVector lift_stability(const Arrangement& a, const Stability& theta);

struct Regularity {
  bool regular = true;
  std::vector<RVector> witness;  // vectors whose span contains zeta
};

enum class RegularityMode { Plain, Sum };

// Plain: zeta outside the span of every (n-1)-subset of s. Sum: the same test against all
// sums of distinct elements of s.
Regularity regularity(const RVector& zeta, const std::vector<RVector>& s, RegularityMode mode);

struct Flag {
  std::vector<std::vector<int>> steps;  // indices into the active set, one block per F_j \ F_{j-1}
  std::vector<RVector> kappa;
  int nu = 0;
  bool contributes = false;  // zeta in the open cone of the kappas
  std::vector<int> basis;    // one active element per step
};

// dmu: rows are the ordered generators (empty = standard coordinates).
std::vector<Flag> enumerate_flags(const std::vector<RVector>& activeset, const RVector& zeta,
                                  const RMatrix& dmu = RMatrix());

std::vector<RVector> directions_of(const std::vector<LinForm>& forms, const std::vector<VarId>& coords);

// Iterated residue in coordinates given by the flag basis, last vector rescaled so that the
// basis has volume dmu.
Rational flag_residue(const RationalExpr& f, const Flag& flag, const std::vector<LinForm>& activeset,
                      const std::vector<VarId>& coords, const RMatrix& dmu = RMatrix());

Rational jk_zeta(const RationalExpr& f, const std::vector<LinForm>& activeset, const RVector& zeta,
                 const std::vector<VarId>& coords, const RMatrix& dmu = RMatrix());

Rational jk_basis(const RationalExpr& f, const std::vector<LinForm>& basis, const RVector& zeta,
                  const std::vector<VarId>& coords);

// Sum over singular points of the local JK residue of the translated function.
Rational jk_global(const RationalExpr& f, const Arrangement& a, const RVector& zeta);

// A sum-regular point of the chamber of -lift(theta) at every singular point of `a`.
// Throws NonRegularStabilityError when -lift(theta) lies on a wall of some active set.
RVector perturbed_zeta(const Arrangement& a, const std::vector<SingularPoint>& points, const Stability& theta,
                       const Quiver* q = nullptr);

}  // namespace jks
