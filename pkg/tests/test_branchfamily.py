"""End-to-end tests of the branch-divisor pipeline on the fixed spec A."""

from fractions import Fraction

import pytest

from scrollbranch.exactalg import QQ, MPoly
from scrollbranch.scrollgeom import SCROLL_VARS, scroll_equation
from scrollbranch.branchfamily import (BranchSpec, DegenerateSpecError,
                                       assemble, double_curves,
                                       curve_intersections,
                                       intersection_summary,
                                       point_certificate, _cert_product,
                                       singular_points, census,
                                       chart_quartic, ridge_germ,
                                       milnor_corank, RIDGE_JET_ORDER,
                                       appendix_blowup_check, CHART_VARS)

LINE_PAIRS = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]
CONIC_PAIRS = [(3, 4), (3, 5), (4, 5)]


def test_assemble_quartic_identity(spec_a):
    F, report = assemble(spec_a)
    assert report['all_flags_pass']
    f = spec_a.f_poly()
    Q = spec_a.q_poly()
    z = {v: MPoly.var(QQ, SCROLL_VARS, v) for v in SCROLL_VARS}
    assert F == z['z0'] * z['z3'] * z['z4'] * f - Q * Q
    assert F.degree() == 4


def test_spec_validation():
    with pytest.raises(ValueError):
        BranchSpec([1, 2, 3], [0] * 15)
    with pytest.raises(DegenerateSpecError):
        BranchSpec([0] * 5, [1] * 15)
    with pytest.raises(DegenerateSpecError):
        BranchSpec([1] * 5, [0] * 15)


def test_double_curves_kinds(spec_a):
    curves = double_curves(spec_a)
    assert len(curves) == 5
    kinds = [c.kind for c in curves]
    assert kinds.count('conic') == 2
    assert kinds.count('quartic') == 3
    assert [c.index for c in curves] == [1, 2, 3, 4, 5]


def test_intersection_pattern(groups_a):
    summary = intersection_summary(groups_a)
    assert summary['total'] == 26
    assert summary['pattern'] == (2, 12, 12)
    assert summary['conjugate_pairs'] == 13
    assert summary['multiplicities_clean']
    assert set(groups_a) == {(1, 2)} | set(LINE_PAIRS) | set(CONIC_PAIRS)
    for pair in LINE_PAIRS:
        assert sum(p.mult * p.size for p in groups_a[pair]) == 2
    for pair in CONIC_PAIRS:
        assert sum(p.mult * p.size for p in groups_a[pair]) == 4


def test_points_lie_on_their_curves(spec_a, groups_a):
    Q = spec_a.q_poly()
    G = scroll_equation()
    f = spec_a.f_poly()
    hyper = {1: 'z0', 2: 'z0', 3: 'z3', 4: 'z4'}
    for pair, pts in groups_a.items():
        for p in pts:
            K = p.field
            vals = {v: c for v, c in zip(SCROLL_VARS, p.coords)}
            assert Q.lift(K).eval_point(vals).is_zero() if K is not QQ \
                else Q.eval_point(vals).is_zero()
            assert (p.coords[0] * p.coords[0]
                    - p.coords[1] * p.coords[2]).is_zero()
            for i in pair:
                if i == 5:
                    fl = f.lift(K) if K is not QQ else f
                    assert fl.eval_point(vals).is_zero()
                else:
                    assert p.coords[SCROLL_VARS.index(hyper[i])].is_zero()
            if pair[0] in (1, 2) and pair[1] in (1, 2):
                continue
            if pair[0] == 1:
                assert p.coords[1].is_zero()
            if pair[0] == 2:
                assert p.coords[2].is_zero()


def test_certificates_are_monic_and_product_degree(groups_a):
    for pair, pts in groups_a.items():
        seen = set()
        deg = 0
        for p in pts:
            cert = p.certificate()
            assert cert[-1] == 1
            K = p.field
            if K.degree > 1 and p.size < K.degree:
                if id(K) in seen:
                    continue
                seen.add(id(K))
            deg += len(cert) - 1
        want = 2 if pair == (1, 2) or pair in LINE_PAIRS else 4
        assert deg == want


def test_singular_census_spec_a(sing_a):
    points = sing_a['points']
    assert not sing_a['residuals']
    a1 = [p for p in points if p.locus.startswith('pair')]
    ridge = [p for p in points if p.locus == 'ridge']
    extras = [p for p in points if p.locus == 'extra']
    assert not extras
    assert sum(p.size for p in a1) == 24
    assert sum(p.size for p in ridge) == 2
    for p in a1:
        assert p.classification == 'A1'
        assert p.mu == 1
        assert p.corank == 0
    for p in ridge:
        assert p.classification == 'A3'
        assert p.mu == 3
        assert p.corank == 1
    # conjugation bookkeeping: even-size classes are self-paired, the two
    # ridge classes pair with each other
    assert ridge[0].partner is ridge[1]
    assert ridge[1].partner is ridge[0]
    for p in a1:
        if p.size % 2 == 0:
            assert p.partner is p


def test_singular_loci_cover_nine_pairs(sing_a):
    from collections import defaultdict
    sizes = defaultdict(int)
    for p in sing_a['points']:
        if p.locus.startswith('pair'):
            sizes[p.locus] += p.size
    assert set(sizes) == {'pair %s' % (pr,)
                          for pr in LINE_PAIRS + CONIC_PAIRS}
    for pr in LINE_PAIRS:
        assert sizes['pair %s' % (pr,)] == 2
    for pr in CONIC_PAIRS:
        assert sizes['pair %s' % (pr,)] == 4


def test_ridge_germ_stable_under_jet_order(spec_a):
    F, report = assemble(spec_a)
    coords = report['ridge']['points'][0][0]
    g6 = ridge_germ(spec_a, coords, jet_order=RIDGE_JET_ORDER)
    g8 = ridge_germ(spec_a, coords, jet_order=8)
    assert milnor_corank(g6) == (3, 1, 'A3')
    assert milnor_corank(g8) == (3, 1, 'A3')


def test_chart_quartic_consistency(spec_a):
    # the z1-chart restriction recovers F on the rational patch s = 1/2
    g = chart_quartic(spec_a, 'z1')
    assert set(g.vars) == set(CHART_VARS)
    F, _rep = assemble(spec_a)
    half = QQ.elem_from_rational(Fraction(1, 2))
    t0 = QQ.elem_from_rational(Fraction(1, 3))
    u0 = QQ.elem_from_rational(Fraction(-2, 5))
    lhs = g.eval_point({'s': half, 't': t0, 'u': u0})
    rhs = F.eval_point({'z0': half, 'z1': QQ.one(),
                        'z2': half * half, 'z3': t0, 'z4': u0})
    assert lhs == rhs


def test_census_ledger_hookup(spec_a):
    c = census(spec_a, extras=[(1, 2)] * 6)
    assert c['counts']['A1_offridge'] == 24
    assert c['counts']['ridge'] == 2
    assert c['counts']['extras_found'] == 0
    assert c['ridge_all_A3']
    assert c['status'] == 'twistor-compatible'
    c_open = census(spec_a, extras=())
    assert c_open['status'] == 'generic-family'


def test_appendix_blowup_model():
    rep = appendix_blowup_check()
    assert rep['sing_W']['is_two_lines']
    assert rep['total_odps'] == 2
    for chart in ('Y', 'Z'):
        assert rep['charts'][chart]['odp']
        assert rep['charts'][chart]['mu'] == 1
    assert rep['charts']['X']['singular_points'] == 0
    assert rep['fiber']['single_rational_curve']
    assert rep['separation']['pairs_disjoint']
    for name in ('P1+', 'P1-', 'P2+', 'P2-'):
        assert rep['planes'][name]['in_W']
