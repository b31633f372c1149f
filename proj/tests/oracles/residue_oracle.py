"""Iterated residues by successive one-variable residues at 0 (sympy).

Each later variable is treated as a generic nonzero symbol while an earlier one is
being eliminated. Prints one line per case; --check compares with the frozen values.
"""
import sys

import sympy as sp

a, b, c, w = sp.symbols("a b c w")
R = sp.Rational

CASES = [
    ("inv_v_v_minus_w", 1 / (a * (a - w)), [a]),
    ("inv_v", 1 / a, [a]),
    ("inv_v_plus_1", 1 / (a + 1), [a]),
    ("inv_v1_v2", 1 / (a * b), [a, b]),
    ("inv_v1_v2_sum", 1 / (a * b * (a + b)), [a, b]),
    ("one_minus_inv_sq", -(1 - 1 / a) ** 2, [a]),
    ("double_pole_ab", 1 / (a**2 * (a + b) * b), [a, b]),
    ("double_pole_ba", 1 / (a**2 * (a + b) * b), [b, a]),
    ("numerator_shift", (1 + a) ** 3 / (a**2 * b * (b - a + 1)), [a, b]),
    ("three_var_abc", 1 / (a * (a + b) * (a + b + c)), [a, b, c]),
    ("three_var_cba", 1 / (a * (a + b) * (a + b + c)), [c, b, a]),
    ("mixed_units", (a + 2 * b + 3) / (a * b * (a - b) ** 2), [a, b]),
    ("units_only_inner", 1 / ((2 * a + b) * (a - 3 * b) * b**2), [a, b]),
    ("units_only_inner_ba", 1 / ((2 * a + b) * (a - 3 * b) * b**2), [b, a]),
    ("affine_poles", (a - 1) * (b - 1) / (a * b * (a + R(1, 3)) * (a + b - R(1, 7))), [a, b]),
    ("high_order", (a + b + 1) ** 2 / (a**3 * b**2 * (2 * a - b + 1)), [a, b]),
    ("high_order_ba", (a + b + 1) ** 2 / (a**3 * b**2 * (2 * a - b + 1)), [b, a]),
    ("three_var_mixed", (1 - a) * (1 - b - c) / (a**2 * (a - b) * b * (b + 2 * c) * c), [a, b, c]),
    ("multinomial", (1 + a + b) ** 4 / (a**2 * b**3), [a, b]),
    ("chain_shifted", (a + b + 2) ** 2 / (a * (a + b) * (b + c) * c * (c + 1)), [a, b, c]),
    ("scaled_forms", 1 / ((3 * a - 2 * b) * (5 * b + R(1, 2)) * b), [a, b]),
    ("scaled_forms_ba", (a + 1) / ((3 * a - 2 * b) * a * b), [b, a]),
]

FROZEN = {
    "inv_v_v_minus_w": "-1/w",
    "inv_v": "1",
    "inv_v_plus_1": "0",
    "inv_v1_v2": "1",
    "inv_v1_v2_sum": "0",
    "one_minus_inv_sq": "2",
    "double_pole_ab": "0",
    "double_pole_ba": "0",
    "numerator_shift": "4",
    "three_var_abc": "1",
    "three_var_cba": "0",
    "mixed_units": "0",
    "units_only_inner": "0",
    "units_only_inner_ba": "0",
    "affine_poles": "-21",
    "high_order": "9",
    "high_order_ba": "9",
    "three_var_mixed": "0",
    "multinomial": "12",
    "chain_shifted": "-4",
    "scaled_forms": "0",
    "scaled_forms_ba": "1/3",
}


def iterated(expr, order):
    for v in order:
        expr = sp.simplify(sp.residue(sp.together(expr), v, 0))
    return sp.simplify(expr)


def main():
    check = "--check" in sys.argv
    ok = True
    for name, expr, order in CASES:
        value = iterated(expr, order)
        print(f"{name}: {value}")
        if check and name in FROZEN and sp.simplify(value - sp.sympify(FROZEN[name], locals={"w": w})) != 0:
            print(f"MISMATCH {name}: expected {FROZEN[name]}")
            ok = False
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
