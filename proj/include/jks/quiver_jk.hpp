#pragma once

#include "jks/arrangement.hpp"
#include "jks/quiver.hpp"
#include "jks/rational_expr.hpp"

#include <vector>

namespace jks {

enum class SignMode { Plain, Mero };

// (-1)^{|d|-1} prod_roots r/(r-1) prod_weights ((rho+R-1)/(rho+R))^m, times (-1)^D in Mero mode.
RationalExpr build_ZQ(const Quiver& q, const DimVector& d, const Arrangement& a, SignMode mode = SignMode::Plain);

struct TreeTerm {
  SpanningTree tree;                // arrows of the reduced quiver
  std::vector<std::size_t> lift;    // weight ids chosen for the tree arrows
  std::vector<Rational> components; // c_alpha per tree arrow
  std::vector<Rational> location;   // x_T
  Rational local_value;
  int indicator = 0;                // 1 iff every component is negative
};

struct TreeExpansion {
  Rational value;
  std::vector<TreeTerm> terms;
};

// q with abelian dimension vector (every vertex has dimension 1); a built from (q, 1).
TreeExpansion jk_tree_expansion(const Quiver& q, const Stability& theta, const Arrangement& a,
                                bool cross_check = true);

// JK residue of Z_Q through the arrangement's singular points, zeta derived from theta.
Rational jk_global_theta(const Quiver& q, const DimVector& d, const Stability& theta, const Arrangement& a);

struct AbelianTermValue {
  AbelianizationTerm term;
  Rational value;  // JK value (finite R) or Weist count (limit) of the term quiver
};

struct AbelianJk {
  Rational value;
  std::vector<AbelianTermValue> terms;
};

// Sum over abelianization terms of coefficient * tree-expansion value, R-charges lambda * Rbar.
AbelianJk jk_ab(const Quiver& q, const DimVector& d, const Stability& zeta, const RChargeSpec& rbar,
                const Rational& lambda, bool split = true);

// Large-R limit: sum over terms of coefficient * weist_count.
AbelianJk jk_ab_infinity(const Quiver& q, const DimVector& d, const Stability& zeta);

struct SweepRow {
  Rational lambda;
  Rational value;
  Rational distance;  // |value - limit|
};

struct LambdaSweep {
  Rational limit;
  std::vector<SweepRow> rows;
};

LambdaSweep lambda_sweep(const Quiver& q, const DimVector& d, const Stability& zeta, const RChargeSpec& rbar,
                         const std::vector<Rational>& lambdas);

// Leaf-first iterated residue of prod_{i->j} (w_i/w_j) m/(w_j - w_i) over the edge variables
// w_head - w_tail, leaves first; arrows may point either way relative to `root`.
Rational wt_residue(const Quiver& tree, const std::vector<int>& multiplicities, int root);

}  // namespace jks
