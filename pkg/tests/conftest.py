import sys
import os
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from scrollbranch.branchfamily import (BranchSpec, curve_intersections,
                                       singular_points)

# three fixed asymmetric specs with diagonally dominant quadrics; all have
# 26 distinct intersection points and clean singularity censuses
FIXED_SPECS = {
    'A': ((1, 1, 2, -1, 2), (3, 2, 0, 2, 0, 4, 2, 0, 2, 5, 2, 2, 6, 4, 7)),
    'B': ((1, 2, -1, 1, 3), (5, 2, 0, 4, 2, 6, 4, 0, 2, 7, 2, 4, 8, 6, 9)),
    'C': ((2, -1, 1, 3, 1), (4, 2, 2, 0, 2, 5, 0, 4, 2, 6, 2, 4, 7, 4, 8)),
}


@pytest.fixture(scope='session')
def spec_a():
    return BranchSpec(*FIXED_SPECS['A'])


@pytest.fixture(scope='session')
def groups_a(spec_a):
    return curve_intersections(spec_a)


@pytest.fixture(scope='session')
def sing_a(spec_a):
    return singular_points(spec_a)


def mpoly_to_sympy(p, symbols):
    """convert a rational-coefficient MPoly into a sympy expression, for
    feeding the independent oracles"""
    import sympy as sp
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        cc = c.vec[0]
        term = sp.Rational(cc.numerator, cc.denominator)
        for v, k in zip(p.vars, e):
            if k:
                term *= symbols[v] ** k
        expr += term
    return expr


def sympy_poly_coeffs(poly):
    """low-first Fraction tuple of a univariate sympy Poly"""
    return tuple(Fraction(str(c)) for c in reversed(poly.all_coeffs()))
