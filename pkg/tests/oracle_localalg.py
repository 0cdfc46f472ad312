"""Brute-force Milnor number oracle.

Computes dim C[[vars]]/(partial derivatives) by plain linear algebra on
truncated jets with sympy rationals, raising the truncation order until the
dimension stabilizes twice in a row.  Used to cross-check the library's
milnor_corank; shares no code with it.
"""

from itertools import combinations_with_replacement

import sympy as sp


def _monomials(gens, max_deg):
    out = []
    for d in range(max_deg + 1):
        for combo in combinations_with_replacement(range(len(gens)), d):
            exp = [0] * len(gens)
            for i in combo:
                exp[i] += 1
            out.append(tuple(exp))
    return out


def _trunc_dim(germ, gens, order):
    """dim of jets(<= order) modulo (jacobian multiples + monomials of top order)."""
    partials = [sp.Poly(sp.diff(germ, g), *gens) for g in gens]
    monos = _monomials(gens, order)
    index = {m: i for i, m in enumerate(monos)}
    rows = []

    def add_row(poly):
        row = [sp.Rational(0)] * len(monos)
        hit = False
        for exp, coeff in poly.terms():
            if sum(exp) <= order:
                row[index[tuple(exp)]] = coeff
                hit = True
        if hit:
            rows.append(row)

    for part in partials:
        for mexp in monos:
            mpoly = sp.Poly({mexp: 1}, *gens)
            add_row(mpoly * part)
    for mexp in monos:
        if sum(mexp) == order:
            rows.append([sp.Rational(1) if m == mexp else sp.Rational(0)
                         for m in monos])
    rank = sp.Matrix(rows).rank()
    return len(monos) - rank


def brute_milnor(germ, gens, max_order=12):
    """Milnor number of an isolated singularity germ, or None if it does not
    stabilize by max_order."""
    prev = None
    stable = 0
    for order in range(1, max_order + 1):
        cur = _trunc_dim(germ, gens, order)
        if cur == prev:
            stable += 1
            if stable >= 2:
                return cur
        else:
            stable = 0
        prev = cur
    return None
