#pragma once

#include "jks/rational_expr.hpp"

#include <vector>

namespace jks {

// Coefficient of v^{-1} in the expansion of f where v is smaller than every other
// variable: factors a*v + M with M != 0 are units and are expanded as power series in v.
RationalExpr residue_step(const RationalExpr& f, VarId v);

// Res_{order[n-1]} o ... o Res_{order[0]} f; the first variable is innermost.
Rational iterated_residue(const RationalExpr& f, const std::vector<VarId>& order);

// Rewrites f in coordinates x_i = basis_i(u) and multiplies by 1/det(basis).
// `coords` lists the u-variables (the columns of the basis matrix); the i-th new coordinate
// reuses the id coords[i]. Other variables of f are left untouched.
RationalExpr change_vars_linear(const RationalExpr& f, const std::vector<LinForm>& basis,
                                const std::vector<VarId>& coords);

// Same, with coords = sorted variables occurring in the basis.
RationalExpr change_vars_linear(const RationalExpr& f, const std::vector<LinForm>& basis);

}  // namespace jks
