#!/usr/bin/env python3
"""Standalone evaluation of genus-zero four-point r-spin correlators.

Evaluates ch_1 of the pushforward for W = x^r from Bernoulli polynomials:
kappa and psi terms integrate to 1 on the four-pointed genus-zero moduli,
and each of the three boundary points contributes B_2(node multiplicity)/2.
Broad nodes (multiplicity 0) use B_2(0).
"""
import argparse
import json
import sys
from fractions import Fraction

import sympy


def bernoulli2(x):
    t = sympy.Symbol("t")
    poly = sympy.bernoulli(2, t)
    return Fraction(str(sympy.Rational(poly.subs(t, sympy.Rational(x.numerator, x.denominator)))))


def frac(x):
    return x - (x.numerator // x.denominator)


def four_point(r, m):
    q = Fraction(1, r)
    thetas = [Fraction(k, r) for k in m]
    degree = 2 * q - sum(thetas)
    if degree.denominator != 1 or degree != -2:
        return Fraction(0)
    value = bernoulli2(q) / 2 - sum(bernoulli2(t) for t in thetas) / 2
    for partner in (1, 2, 3):
        node = frac(q - thetas[0] - thetas[partner])
        value += bernoulli2(node) / 2
    return value


CASES = [
    {"r": 6, "multiplicities": [4, 4, 3, 3]},
    {"r": 3, "multiplicities": [2, 2, 2, 2]},
    {"r": 5, "multiplicities": [3, 3, 3, 3]},
]


def evaluate():
    out = []
    for case in CASES:
        v = four_point(case["r"], case["multiplicities"])
        out.append({**case, "broad_nodes": "bernoulli_at_zero", "value": f"{v.numerator}/{v.denominator}"})
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--golden", required=True)
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args()
    data = evaluate()
    if args.write:
        with open(args.golden, "w") as f:
            json.dump(data, f, indent=2)
            f.write("\n")
        return 0
    with open(args.golden) as f:
        golden = json.load(f)
    if golden != data:
        print("golden mismatch", json.dumps(data), file=sys.stderr)
        return 1
    for d in data:
        print(f"r={d['r']} m={d['multiplicities']} value={d['value']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
