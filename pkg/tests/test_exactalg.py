"""Property-based and fixed tests for the exact-arithmetic core."""

from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from scrollbranch.exactalg import (QQ, NumberField, MPoly, IdealBasis,
                                   reduce_mod, resultant, rank, rref,
                                   kernel_basis, solve_linear,
                                   charpoly_rational, fe_eval,
                                   binary_form_roots, reexpand_roots,
                                   sturm_real_roots, solve_zero_dim)
from conftest import mpoly_to_sympy
from oracle_resultant import sylvester_resultant

rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 7))

GAUSS = NumberField([1, 0], conj_image=[0, -1])          # Q(i)
QUARTIC = NumberField([1, 1, 0, 0])                      # Q[t]/(t^4 + t + 1)


def _elem(field, vals):
    return field.elem(list(vals)[:field.degree])


vec4 = st.lists(rationals, min_size=4, max_size=4)


@settings(max_examples=50, deadline=None)
@given(vec4, vec4, vec4)
def test_field_ring_axioms(a, b, c):
    for K in (GAUSS, QUARTIC):
        x, y, z = _elem(K, a), _elem(K, b), _elem(K, c)
        assert (x + y) + z == x + (y + z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x * y) * z == x * (y * z)
        if not x.is_zero():
            assert x * x.inverse() == K.one()


@settings(max_examples=50, deadline=None)
@given(vec4, vec4)
def test_gauss_conjugation(a, b):
    x, y = _elem(GAUSS, a), _elem(GAUSS, b)
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    # norm is rational
    assert (x * x.conj()).is_rational()


@settings(max_examples=30, deadline=None)
@given(vec4)
def test_charpoly_annihilates(a):
    for K in (GAUSS, QUARTIC):
        x = _elem(K, a)
        cp = charpoly_rational(x)
        assert len(cp) == K.degree + 1
        assert cp[-1] == 1
        assert fe_eval(list(cp), x).is_zero()


def _mpoly_from_terms(variables, terms):
    return MPoly(QQ, variables, dict(terms))


small_exp = st.tuples(st.integers(0, 3), st.integers(0, 2))
biv_poly = st.dictionaries(small_exp, rationals, min_size=1, max_size=5)


@settings(max_examples=40, deadline=None)
@given(biv_poly, biv_poly)
def test_resultant_matches_sylvester_oracle(tp, tq):
    V = ('x', 'y')
    p = _mpoly_from_terms(V, tp)
    q = _mpoly_from_terms(V, tq)
    if p.is_zero() or q.is_zero():
        return
    if p.degree_in('x') < 1 or q.degree_in('x') < 1:
        return
    r = resultant(p, q, 'x')
    syms = {v: sp.Symbol(v) for v in V}
    want = sylvester_resultant(mpoly_to_sympy(p, syms),
                               mpoly_to_sympy(q, syms), syms['x'])
    got = mpoly_to_sympy(r, syms)
    assert sp.expand(got - want) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=5, max_size=5))
def test_binary_form_roots_invariants(coeffs):
    if all(c == 0 for c in coeffs):
        return
    V = ('x', 'y')
    b = MPoly(QQ, V, {(i, 4 - i): c for i, c in enumerate(coeffs) if c})
    roots = binary_form_roots(b)
    deg = b.degree()
    assert sum(r.mult * r.size for r in roots) == deg
    # the re-expansion is proportional to b
    prod = reexpand_roots(b, roots)
    lead = None
    for e, c in b.terms.items():
        pc = prod.coeff(e)
        if not pc.is_zero():
            lead = c.vec[0] / pc.vec[0]
            break
    assert lead is not None
    assert (b - lead * prod).is_zero()
    # every explicit root really is a root
    for r in roots:
        if r.size == 1:
            val = b.lift(r.field) if r.field is not QQ else b
            assert val.eval_point({'x': r.x, 'y': r.y}).is_zero()


def test_sturm_counts():
    # (x^2 - 2)(x^2 + 1): two real roots
    assert sturm_real_roots([-2, 0, -1, 0, 1]) == 2
    assert sturm_real_roots([1, 0, 1]) == 0       # x^2 + 1
    assert sturm_real_roots([-1, 0, 1]) == 2      # x^2 - 1
    assert sturm_real_roots([0, 1]) == 1          # x
    assert sturm_real_roots([-2, 0, 0, 1]) == 1   # x^3 - 2


mat_strategy = st.lists(st.lists(rationals, min_size=4, max_size=4),
                        min_size=2, max_size=5)


@settings(max_examples=40, deadline=None)
@given(mat_strategy)
def test_kernel_and_rank(rows):
    n = 4
    k = kernel_basis(rows, n)
    r = rank(rows, n)
    assert r + len(k) == n
    for v in k:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) == 0


@settings(max_examples=40, deadline=None)
@given(mat_strategy, st.lists(rationals, min_size=4, max_size=4))
def test_solve_linear_consistent(rows, x):
    n = 4
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    sol = solve_linear(rows, rhs)
    assert sol is not None
    part, ker = sol
    for row, b in zip(rows, rhs):
        assert sum(a * c for a, c in zip(row, part)) == b


def test_rref_idempotent_pivots():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    mat, pivots = rref(rows, 3)
    assert pivots == [0, 1]
    again, pivots2 = rref(mat, 3)
    assert again == mat and pivots2 == pivots


def test_reduce_mod_scroll_ideal():
    V = ('z0', 'z1', 'z2')
    z0 = MPoly.var(QQ, V, 'z0')
    z1 = MPoly.var(QQ, V, 'z1')
    z2 = MPoly.var(QQ, V, 'z2')
    G = z0 * z0 - z1 * z2
    I = IdealBasis([G], order=V, groebner=True)
    # z0^2 reduces to z1 z2
    assert reduce_mod(z0 * z0, I) == z1 * z2
    # multiples of G reduce to zero
    assert reduce_mod(G * (z1 + 3 * z2), I).is_zero()


def test_solve_zero_dim_small_system():
    V = ('x', 'y')
    x = MPoly.var(QQ, V, 'x')
    y = MPoly.var(QQ, V, 'y')
    # x^2 = 2, y = x + 1: one quadratic class of size 2
    res = solve_zero_dim([x * x - 2, y - x - 1], order=['x', 'y'])
    assert not res.residuals
    assert len(res.solutions) == 1
    sol = res.solutions[0]
    assert sol.size == 2
    xv, yv = sol.coords['x'], sol.coords['y']
    assert (xv * xv - 2).is_zero()
    assert (yv - xv - 1).is_zero()


def test_solve_zero_dim_residual_beyond_cap():
    V = ('x',)
    x = MPoly.var(QQ, V, 'x')
    # irreducible quintic exceeds the degree-4 field cap
    p = x ** 5 - x - 1
    res = solve_zero_dim([p], order=['x'])
    assert res.solutions == []
    assert len(res.residuals) == 1
    assert res.residuals[0].var == 'x'
    assert len(res.residuals[0].coeffs) == 6
