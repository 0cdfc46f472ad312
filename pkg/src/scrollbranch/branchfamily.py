"""The branch divisor family B = Y cap {z0 z3 z4 f = Q^2}.

Assembles the quartic from a coefficient spec, extracts the five double
curves and their 26 intersection points, locates every singular point of B
chart by chart, classifies each one by Milnor number and corank, builds the
ridge germ, and checks the local blowup model from the appendix material.
"""

import random
from fractions import Fraction

from .exactalg import (QQ, NumberField, FieldElem, MPoly, IdealBasis,
                       reduce_mod, binary_form_roots, solve_zero_dim,
                       charpoly_rational, DimensionError, rank,
                       _factor_mpoly_q)
from .scrollgeom import SCROLL_VARS, scroll_equation, ridge_points
from . import latticecalc

# canonical ordering of the 15 quadric coefficients
Q_ORDER = [(i, j) for i in range(5) for j in range(i, 5)]

# weight vectors for point certificates (projective-invariant ratio)
CERT_W = (3, 5, 7, 11, 13)
CERT_V = (1, 2, 3, 4, 5)

CHART_VARS = ('s', 't', 'u')


class DegenerateSpecError(Exception):
    """the coefficient spec violates a genericity hypothesis"""


class NonIsolatedError(Exception):
    """the singular locus of B is positive-dimensional"""


def _on_vars(p, newvars):
    """re-express a polynomial on a larger/reordered variable tuple"""
    out = MPoly(p.field, newvars)
    for e, c in p.terms.items():
        ne = [0] * len(newvars)
        for v, k in zip(p.vars, e):
            if k:
                ne[newvars.index(v)] = k
        out.terms[tuple(ne)] = c
    return out


def _trunc(p, n):
    """drop terms of total degree > n"""
    out = MPoly(p.field, p.vars)
    out.terms = {e: c for e, c in p.terms.items() if sum(e) <= n}
    return out


def _series_inverse(p, n):
    """multiplicative inverse of a unit power series, to total degree n"""
    c0 = p.constant()
    if c0.is_zero():
        raise ValueError("series has no constant term, not a unit")
    inv = MPoly.const(p.field, p.vars, c0.inverse())
    # Newton: inv <- inv*(2 - p*inv), doubling correct order each step
    k = 1
    while k <= n:
        err = _trunc(p * inv, n)
        inv = _trunc(inv * (2 - err), n)
        k *= 2
    return inv


def _subst_trunc(p, assignment, n):
    """substitute polynomials for variables, truncating every product to
    total degree n; sound because truncation commutes with multiplication
    of truncated series"""
    field = p.field
    subs = {}
    for name, v in assignment.items():
        subs[name] = _trunc(_on_vars(v, p.vars) if v.vars != p.vars else v,
                            n)
    powcache = {}

    def power_of(name, k):
        key = (name, k)
        if key not in powcache:
            if k == 1:
                powcache[key] = subs[name]
            else:
                powcache[key] = _trunc(power_of(name, k - 1) * subs[name], n)
        return powcache[key]

    out = MPoly.zero(field, p.vars)
    for e, c in p.terms.items():
        if sum(ei for ei, v in zip(e, p.vars) if v not in subs) > n:
            continue
        term = MPoly.const(field, p.vars, c)
        for i, v in enumerate(p.vars):
            if e[i] == 0:
                continue
            if v in subs:
                term = _trunc(term * power_of(v, e[i]), n)
            else:
                term = term * MPoly.var(field, p.vars, v, e[i])
        out = out + _trunc(term, n)
    return out


def fe_matrix_rank(rows):
    """rank of a matrix with FieldElem entries (Gaussian elimination)"""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if not mat[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


# ---------------------------------------------------------------------------
# coefficient specs
# ---------------------------------------------------------------------------

class BranchSpec(object):
    """coefficients of the branch family: 5 for the linear form f and 15
    for the quadric Q (ordering Q_ORDER)."""

    def __init__(self, f_coeffs, q_coeffs, jet_order=8, degree_cap=4):
        f = [Fraction(x) for x in f_coeffs]
        q = [Fraction(x) for x in q_coeffs]
        if len(f) != 5:
            raise ValueError("f needs 5 coefficients")
        if len(q) != 15:
            raise ValueError("Q needs 15 coefficients")
        if all(c == 0 for c in f):
            raise DegenerateSpecError("f = 0")
        if all(c == 0 for c in q):
            raise DegenerateSpecError("Q = 0")
        self.f_coeffs = tuple(f)
        self.q_coeffs = tuple(q)
        self.jet_order = jet_order
        self.degree_cap = degree_cap

    def f_poly(self):
        out = MPoly.zero(QQ, SCROLL_VARS)
        for v, c in zip(SCROLL_VARS, self.f_coeffs):
            out = out + c * MPoly.var(QQ, SCROLL_VARS, v)
        return out

    def q_poly(self):
        out = MPoly.zero(QQ, SCROLL_VARS)
        for (i, j), c in zip(Q_ORDER, self.q_coeffs):
            out = out + c * (MPoly.var(QQ, SCROLL_VARS, SCROLL_VARS[i])
                             * MPoly.var(QQ, SCROLL_VARS, SCROLL_VARS[j]))
        return out

    @classmethod
    def random(cls, seed, max_tries=50):
        """seeded random spec with a positive-definite quadric.

        Q is built from a strictly diagonally dominant symmetric integer
        matrix, which keeps every restriction of Q to a real line or conic
        root-free over R, so all 13 point pairs are honest conjugate pairs.
        """
        for attempt in range(max_tries):
            rng = random.Random(1000003 * int(seed) + attempt)
            A = [[0] * 5 for _ in range(5)]
            for i in range(5):
                for j in range(i + 1, 5):
                    A[i][j] = A[j][i] = rng.randint(-1, 1)
            for i in range(5):
                A[i][i] = sum(abs(A[i][j]) for j in range(5) if j != i) \
                    + rng.randint(1, 4)
            q = []
            for (i, j) in Q_ORDER:
                q.append(A[i][i] if i == j else 2 * A[i][j])
            f = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(5)]
            try:
                spec = cls(f, q)
                report = assemble(spec)[1]
            except DegenerateSpecError:
                continue
            if report['all_flags_pass']:
                return spec
        raise DegenerateSpecError("no generic spec found for seed %r" % seed)

    def __repr__(self):
        return "BranchSpec(f=%s, Q=%s)" % (list(self.f_coeffs),
                                           list(self.q_coeffs))


def assemble(spec):
    """the quartic F = z0 z3 z4 f - Q^2 plus the genericity report"""
    f = spec.f_poly()
    Q = spec.q_poly()
    G = scroll_equation()
    z = [MPoly.var(QQ, SCROLL_VARS, v) for v in SCROLL_VARS]
    F = z[0] * z[3] * z[4] * f - Q * Q

    ideal_G = IdealBasis([G], order=SCROLL_VARS, groebner=True)
    if reduce_mod(Q, ideal_G).is_zero():
        raise DegenerateSpecError("Q lies in the scroll ideal")

    flags = {}
    # transversality of Q on the ridge line
    try:
        rp = ridge_points(Q)
        flags['ridge_transversal'] = not rp['degenerate']
    except ValueError:
        rp = None
        flags['ridge_transversal'] = False

    # ridge points must avoid H3, H4 and {f = 0}
    ok = rp is not None and flags['ridge_transversal']
    if ok:
        for pt, _m, _r in rp['points']:
            if pt[3].is_zero() or pt[4].is_zero():
                ok = False
                break
            fval = sum((pt[i] * c for i, c in enumerate(spec.f_coeffs)),
                       pt[0].field.zero())
            if fval.is_zero():
                ok = False
                break
    flags['ridge_points_clear'] = ok

    # the five cutting hyperplanes must be pairwise distinct: f must not be
    # proportional to z3 or z4 (and must involve more than one variable
    # unless it is a different coordinate plane)
    fc = spec.f_coeffs
    prop_z3 = all(c == 0 for i, c in enumerate(fc) if i != 3)
    prop_z4 = all(c == 0 for i, c in enumerate(fc) if i != 4)
    flags['curves_distinct'] = not (prop_z3 or prop_z4)

    # intersection bookkeeping needs f3 and f4 nonzero
    flags['f_coords_nonzero'] = fc[3] != 0 and fc[4] != 0

    flags['all_flags_pass'] = all(flags.values())
    return F, {'flags': flags, 'all_flags_pass': flags['all_flags_pass'],
               'ridge': rp}


# ---------------------------------------------------------------------------
# double curves
# ---------------------------------------------------------------------------

class DoubleCurve(object):
    """one of the five double curves, by its ideal generators"""

    def __init__(self, index, gens, kind, hyperplane):
        self.index = index
        self.gens = gens
        self.kind = kind              # 'conic' | 'quartic'
        self.hyperplane = hyperplane  # linear MPoly cutting the section

    def __repr__(self):
        return "DoubleCurve(C%d, %s)" % (self.index, self.kind)


def double_curves(spec):
    """the five double curves, with the doubling identity re-checked:
    F reduces to -Q^2 modulo each cutting hyperplane."""
    F, report = assemble(spec)
    if not report['all_flags_pass']:
        raise DegenerateSpecError("genericity flags fail: %s"
                                  % report['flags'])
    f = spec.f_poly()
    Q = spec.q_poly()
    G = scroll_equation()
    z = [MPoly.var(QQ, SCROLL_VARS, v) for v in SCROLL_VARS]

    curves = [
        DoubleCurve(1, (z[0], z[1], Q), 'conic', z[0]),
        DoubleCurve(2, (z[0], z[2], Q), 'conic', z[0]),
        DoubleCurve(3, (z[3], Q, G), 'quartic', z[3]),
        DoubleCurve(4, (z[4], Q, G), 'quartic', z[4]),
        DoubleCurve(5, (f, Q, G), 'quartic', f),
    ]
    # doubling identity: modulo the hyperplane the quartic is minus a square
    for c in curves:
        I = IdealBasis([c.hyperplane], order=SCROLL_VARS, groebner=True)
        lhs = reduce_mod(F, I)
        rhs = reduce_mod(-(Q * Q), I)
        if not (lhs - rhs).is_zero():
            raise AssertionError("doubling identity fails for C%d" % c.index)
    return curves


# ---------------------------------------------------------------------------
# point certificates
# ---------------------------------------------------------------------------

def point_certificate(coords):
    """canonical certificate of a projective point class: the monic
    characteristic polynomial (low-first rational coefficients) of the
    ratio (w.z)/(v.z) over the point's field."""
    field = None
    for c in coords:
        if isinstance(c, FieldElem):
            field = c.field
            break
    num = field.zero()
    den = field.zero()
    for wi, vi, c in zip(CERT_W, CERT_V, coords):
        num = num + c * wi
        den = den + c * vi
    if den.is_zero():
        raise ValueError("certificate denominator vanishes; "
                         "change weight vectors")
    lam = num / den
    return tuple(charpoly_rational(lam))


def _cert_product(certs):
    """monic product of certificate polynomials (low-first tuples)"""
    from .exactalg import _uv_mul
    out = [Fraction(1)]
    for c in certs:
        out = _uv_mul(out, list(c))
    return tuple(out)


# ---------------------------------------------------------------------------
# curve intersections: the 26 points
# ---------------------------------------------------------------------------

class CurvePoint(object):
    """one intersection point class of two double curves.

    size counts the conjugate points the class stands for; explicit
    quadratic pairs come as two objects with partner links instead.
    """

    def __init__(self, pair, coords, mult, size, root=None, partner=None):
        self.pair = pair
        self.coords = coords
        self.mult = mult
        self.size = size
        self.root = root
        self.partner = partner

    @property
    def field(self):
        for c in self.coords:
            if isinstance(c, FieldElem):
                return c.field

    def certificate(self):
        return point_certificate(self.coords)

    def __repr__(self):
        return "CurvePoint(%s, size %d)" % (self.pair, self.size)


def _points_from_binary(pair, b, embed):
    """turn the roots of a binary form into CurvePoints via an embedding
    (x, y) -> 5 projective coordinates"""
    roots = binary_form_roots(b)
    pts = []
    for r in roots:
        coords = embed(r.x, r.y)
        pts.append(CurvePoint(pair, coords, r.mult, r.size, root=r))
    # wire partner links for explicit conjugate pairs
    by_root = {id(r.root): r for r in pts}
    for p in pts:
        if p.root is not None and p.root.partner is not None:
            q = by_root.get(id(p.root.partner))
            if q is not None:
                p.partner = q
    return pts


def _line_restriction(Q5, keep, zero_out):
    """restrict a 5-variable polynomial to a coordinate line, returning a
    binary form in the two kept variables"""
    zero = QQ.elem_from_rational(0)
    sub = {v: zero for v in zero_out}
    return Q5.subst(sub).drop_vars(tuple(zero_out))


def curve_intersections(spec):
    """the 26 pairwise intersection points of the five double curves,
    grouped by curve pair.

    Groups: (1,2) on the ridge (2 points); six line pairs (2 points each);
    three conic pairs (4 points each).  Everything is solved through binary
    forms of degree at most 4.
    """
    F, report = assemble(spec)
    if not report['all_flags_pass']:
        raise DegenerateSpecError("genericity flags fail")
    Q = spec.q_poly()
    fc = spec.f_coeffs
    groups = {}

    # --- C1 cap C2: the ridge points -------------------------------------
    rp = report['ridge']
    pts = []
    for (coords, mult, root) in rp['points']:
        pts.append(CurvePoint((1, 2), coords, mult, root.size, root=root))
    by_root = {id(p.root): p for p in pts}
    for p in pts:
        if p.root.partner is not None and id(p.root.partner) in by_root:
            p.partner = by_root[id(p.root.partner)]
    groups[(1, 2)] = pts

    zero = QQ.elem_from_rational(0)

    # --- coordinate line pairs -------------------------------------------
    # C1 = {z0=z1=0} cap Q; C2 = {z0=z2=0} cap Q; C3 in {z3=0}; C4 in {z4=0}
    def line_group(pair, zero_vars, keep):
        b = _line_restriction(Q, keep, zero_vars)
        if b.is_zero() or b.degree() != 2:
            raise DegenerateSpecError("Q restricted to the %s line is "
                                      "degenerate" % (pair,))
        ki = [SCROLL_VARS.index(k) for k in keep]

        def embed(x, y):
            f = x.field
            out = [f.zero()] * 5
            out[ki[0]] = x
            out[ki[1]] = y
            return tuple(out)
        return _points_from_binary(pair, b, embed)

    groups[(1, 3)] = line_group((1, 3), ('z0', 'z1', 'z3'), ('z2', 'z4'))
    groups[(1, 4)] = line_group((1, 4), ('z0', 'z1', 'z4'), ('z2', 'z3'))
    groups[(2, 3)] = line_group((2, 3), ('z0', 'z2', 'z3'), ('z1', 'z4'))
    groups[(2, 4)] = line_group((2, 4), ('z0', 'z2', 'z4'), ('z1', 'z3'))

    # --- the lines C1 cap C5 and C2 cap C5 -------------------------------
    # in the plane {z0 = zi = 0} the form f cuts a line; eliminate one
    # variable with a nonzero f-coefficient and solve Q on that line
    def f_line_group(pair, plane_zero, keep3):
        # keep3: the three surviving variables
        fvals = {v: Fraction(fc[SCROLL_VARS.index(v)]) for v in keep3}
        # pick the variable with the largest |coefficient| to eliminate
        elim = max(keep3, key=lambda v: abs(fvals[v]))
        if fvals[elim] == 0:
            raise DegenerateSpecError("f vanishes on the plane for %s"
                                      % (pair,))
        rest = [v for v in keep3 if v != elim]
        sub = {v: zero for v in plane_zero}
        Qp = Q.subst(sub).drop_vars(tuple(plane_zero))
        # elim = -(sum of other terms)/f_elim
        repl = MPoly.zero(QQ, tuple(rest))
        for v in rest:
            repl = repl - (fvals[v] / fvals[elim]) * MPoly.var(
                QQ, tuple(rest), v)
        b = Qp.subst({elim: repl}).drop_vars((elim,))
        if b.is_zero() or b.degree() != 2:
            raise DegenerateSpecError("degenerate f-line for %s" % (pair,))
        idx = [SCROLL_VARS.index(v) for v in rest]
        eidx = SCROLL_VARS.index(elim)

        def embed(x, y):
            f = x.field
            out = [f.zero()] * 5
            out[idx[0]] = x
            out[idx[1]] = y
            ev = f.zero()
            ev = ev - x * (fvals[rest[0]] / fvals[elim])
            ev = ev - y * (fvals[rest[1]] / fvals[elim])
            out[eidx] = ev
            return tuple(out)
        return _points_from_binary(pair, b, embed)

    groups[(1, 5)] = f_line_group((1, 5), ('z0', 'z1'), ('z2', 'z3', 'z4'))
    groups[(2, 5)] = f_line_group((2, 5), ('z0', 'z2'), ('z1', 'z3', 'z4'))

    # --- conic pairs: quartic points -------------------------------------
    # the conic {z3 = z4 = 0} cap Y is rational: (z0,z1,z2) = (st, s^2, t^2)
    ST = ('s_', 't_')
    s = MPoly.var(QQ, ST, 's_')
    t = MPoly.var(QQ, ST, 't_')
    V7 = SCROLL_VARS + ST
    Q7 = _on_vars(Q, V7)
    conic = {'z0': s * t, 'z1': s * s, 'z2': t * t}

    def conic_group(pair, z3_val, z4_val):
        sub = {k: _on_vars(v, V7) for k, v in conic.items()}
        sub['z3'] = _on_vars(z3_val, V7)
        sub['z4'] = _on_vars(z4_val, V7)
        b = Q7.subst(sub).drop_vars(SCROLL_VARS)
        if b.is_zero() or b.degree() != 4:
            raise DegenerateSpecError("degenerate conic restriction for %s"
                                      % (pair,))

        def embed(x, y):
            f = x.field

            def ev(p):
                if isinstance(p, MPoly):
                    return p.eval_point({'s_': x, 't_': y})
                return f.elem_from_rational(0)
            z0 = x * y
            z1 = x * x
            z2 = y * y
            z3 = ev(z3_val) if isinstance(z3_val, MPoly) else f.zero()
            z4 = ev(z4_val) if isinstance(z4_val, MPoly) else f.zero()
            return (z0, z1, z2, z3, z4)
        return _points_from_binary(pair, b, embed)

    zero_st = MPoly.zero(QQ, ST)
    groups[(3, 4)] = conic_group((3, 4), zero_st, zero_st)

    # on {z3 = 0} the form f solves z4 = -(f0 z0 + f1 z1 + f2 z2)/f4
    z4_expr = (-Fraction(fc[0]) * s * t - Fraction(fc[1]) * s * s
               - Fraction(fc[2]) * t * t) * Fraction(1, fc[4])
    groups[(3, 5)] = conic_group((3, 5), zero_st, z4_expr)
    z3_expr = (-Fraction(fc[0]) * s * t - Fraction(fc[1]) * s * s
               - Fraction(fc[2]) * t * t) * Fraction(1, fc[3])
    groups[(4, 5)] = conic_group((4, 5), z3_expr, zero_st)

    return groups


def intersection_summary(groups):
    """counts and conjugate-pair bookkeeping over the grouped points"""
    total = 0
    pairs = 0
    mults_clean = True
    for pair, pts in groups.items():
        for p in pts:
            total += p.mult * p.size
            if p.mult != 1:
                mults_clean = False
            if p.size == 1:
                if p.partner is not None:
                    pairs += 1  # counted twice, fixed below
            else:
                cp = p.root.conj_pairs if p.root is not None else None
                if cp:
                    pairs += 2 * cp
    pairs //= 2
    ridge = sum(p.mult * p.size for p in groups[(1, 2)])
    lines = sum(p.mult * p.size for pr, g in groups.items()
                for p in g if pr != (1, 2) and (pr[0] in (1, 2)))
    conics = sum(p.mult * p.size for pr, g in groups.items()
                 for p in g if pr[0] in (3, 4))
    return {'total': total, 'pattern': (ridge, lines, conics),
            'conjugate_pairs': pairs, 'multiplicities_clean': mults_clean}


# ---------------------------------------------------------------------------
# singular points
# ---------------------------------------------------------------------------

class SingularPoint(object):
    """singular point class of B: projective coordinates, locus tag,
    Milnor data, and chart bookkeeping."""

    def __init__(self, coords, size, chart, chart_coords=None):
        self.coords = coords
        self.size = size
        self.chart = chart
        self.chart_coords = chart_coords
        self.locus = 'extra'
        self.mu = None
        self.corank = None
        self.classification = 'unclassified'
        self.partner = None

    @property
    def field(self):
        for c in self.coords:
            if isinstance(c, FieldElem):
                return c.field

    def certificate(self):
        return point_certificate(self.coords)

    def __repr__(self):
        return ("SingularPoint(%s, size %d, mu=%s, %s)"
                % (self.locus, self.size, self.mu, self.classification))


def chart_quartic(spec, chart):
    """g(s,t,u): the quartic restricted to a Y-chart"""
    f = spec.f_poly()
    Q = spec.q_poly()
    V8 = SCROLL_VARS + CHART_VARS
    s = MPoly.var(QQ, V8, 's')
    t = MPoly.var(QQ, V8, 't')
    u = MPoly.var(QQ, V8, 'u')
    one = MPoly.const(QQ, V8, 1)
    if chart == 'z1':
        z = {'z0': s, 'z1': one, 'z2': s * s, 'z3': t, 'z4': u}
    elif chart == 'z2':
        z = {'z0': s, 'z1': s * s, 'z2': one, 'z3': t, 'z4': u}
    else:
        raise ValueError("unknown Y-chart %r" % chart)
    fv = _on_vars(f, V8).subst(z)
    Qv = _on_vars(Q, V8).subst(z)
    g = (s * t * u * fv - Qv * Qv).drop_vars(SCROLL_VARS)
    return g


def _chart_embed_class(sol, chart):
    """projective coordinates of a chart Solution class"""
    K = sol.field
    s = sol.coords['s']
    t = sol.coords['t']
    u = sol.coords['u']
    one = K.one()
    if chart == 'z1':
        return (s, one, s * s, t, u)
    return (s, s * s, one, t, u)


def _hessian_corank(g, sol):
    """corank of the (s,t,u) Hessian of g at a solution class"""
    K = sol.field
    vals = {v: sol.coords[v] for v in g.vars}
    H = []
    for a in g.vars:
        row = []
        ga = g.diff(a)
        for b in g.vars:
            row.append(ga.diff(b).eval_point(vals))
        H.append(row)
    return len(g.vars) - fe_matrix_rank(H)


def singular_points(spec, classify=True):
    """all singular points of B: the z1-chart Jacobian scheme, the z1 = 0
    part from the z2-chart, and the two ridge points.

    Raises NonIsolatedError when the elimination detects a positive-
    dimensional singular locus.
    """
    F, report = assemble(spec)
    if not report['all_flags_pass']:
        raise DegenerateSpecError("genericity flags fail")
    out = []
    residuals = []

    g1 = chart_quartic(spec, 'z1')
    system1 = [g1] + [g1.diff(v) for v in CHART_VARS]
    try:
        res1 = solve_zero_dim(system1, order=list(CHART_VARS),
                              degree_cap=spec.degree_cap)
    except DimensionError as err:
        raise NonIsolatedError("z1-chart singular locus is "
                               "positive-dimensional: %s" % err)
    residuals.extend(res1.residuals)
    for sol in res1.solutions:
        p = SingularPoint(_chart_embed_class(sol, 'z1'), sol.size,
                          'z1', sol.coords)
        out.append((p, g1, sol))

    # the z2-chart contributes exactly its s = 0 slice (z1 = 0, z2 != 0)
    g2 = chart_quartic(spec, 'z2')
    system2 = [g2] + [g2.diff(v) for v in CHART_VARS]
    zero = QQ.elem_from_rational(0)
    TU = ('t', 'u')
    sliced = []
    for p5 in system2:
        q5 = p5.subst({'s': zero})
        q2 = q5.drop_vars(('s',))
        sliced.append(q2)
    sliced = [p for p in sliced if not p.is_zero()]
    if not sliced:
        raise NonIsolatedError("z2-chart slice is degenerate")
    try:
        res2 = solve_zero_dim(sliced, order=list(TU),
                              degree_cap=spec.degree_cap)
    except DimensionError as err:
        raise NonIsolatedError("z2-chart singular locus is "
                               "positive-dimensional: %s" % err)
    residuals.extend(res2.residuals)
    for sol in res2.solutions:
        K = sol.field

        class _S(object):
            pass
        full = _S()
        full.field = K
        full.coords = {'s': K.zero(), 't': sol.coords['t'],
                       'u': sol.coords['u']}
        full.size = K.degree
        p = SingularPoint(_chart_embed_class(full, 'z2'), K.degree,
                          'z2', full.coords)
        out.append((p, g2, full))

    # ridge points
    ridge = report['ridge']
    ridge_pts = []
    for coords, mult, root in ridge['points']:
        p = SingularPoint(coords, root.size, 'ridge')
        p.locus = 'ridge'
        ridge_pts.append((p, root))

    # locus tags by certificate matching against the 26 points
    groups = curve_intersections(spec)
    cert_to_pair = {}
    for pair, pts in groups.items():
        for cp in pts:
            cert_to_pair.setdefault(cp.certificate(), pair)
    points = []
    for p, g, sol in out:
        cert = p.certificate()
        if cert in cert_to_pair:
            p.locus = 'pair %s' % (cert_to_pair[cert],)
        else:
            p.locus = 'extra'
        points.append(p)

    if classify:
        for p, g, sol in out:
            p.corank = _hessian_corank(g, sol)
            if p.corank == 0:
                p.mu = 1
                p.classification = 'A1'
            else:
                germ = chart_germ(spec, p, g, sol)
                mu, corank, cls = milnor_corank(germ)
                p.mu, p.corank, p.classification = mu, corank, cls
        for p, root in ridge_pts:
            germ = ridge_germ(spec, p.coords)
            mu, corank, cls = milnor_corank(germ)
            p.mu, p.corank, p.classification = mu, corank, cls

    # conjugate partners: ridge explicit roots pair up; chart classes of
    # size 2k with no real member are self-paired
    rp0 = [p for p, _r in ridge_pts]
    if len(rp0) == 2:
        rp0[0].partner, rp0[1].partner = rp0[1], rp0[0]
    for p in points:
        if p.size % 2 == 0:
            p.partner = p

    all_points = points + rp0
    return {'points': all_points, 'residuals': residuals,
            'groups': groups}


# ---------------------------------------------------------------------------
# local germs and Milnor numbers
# ---------------------------------------------------------------------------

class LocalGerm(object):
    """a truncated 3-variable power series germ at the origin"""

    def __init__(self, poly, order, provenance=""):
        self.poly = poly
        self.order = order
        self.provenance = provenance
        if not poly.constant().is_zero():
            raise ValueError("germ does not vanish at the origin")

    def __repr__(self):
        return "LocalGerm(order %d, %s)" % (self.order, self.provenance)


def chart_germ(spec, point, g, sol):
    """the germ of the chart quartic at a singular chart point, translated
    to the origin and truncated to the spec's jet order"""
    K = sol.field
    subs = {}
    for v in g.vars:
        subs[v] = MPoly.var(K, g.vars, v) + MPoly.const(
            K, g.vars, sol.coords[v])
    shifted = g.subst(subs)
    return LocalGerm(_trunc(shifted, spec.jet_order), spec.jet_order,
                     "chart %s" % point.chart)


def _monomials_upto(nvars, deg):
    """exponent tuples of total degree <= deg"""
    out = []

    def rec(prefix, rem, left):
        if left == 1:
            out.append(prefix + (rem,))
            return
        for k in range(rem + 1):
            rec(prefix + (k,), rem - k, left - 1)

    for d in range(deg + 1):
        rec((), d, nvars)
    return out


def milnor_corank(germ):
    """(Milnor number, Hessian corank, classification) of an isolated germ.

    Uses the Morse shortcut for corank 0; otherwise finds the smallest k
    with m^k inside the Jacobian ideal (certified on truncated jets) and
    reads off the local-algebra dimension.  Corank 1 with finite mu is
    automatically of type A_mu; corank >= 2 is left unclassified.
    """
    g = germ.poly
    nvars = len(g.vars)
    field = g.field
    origin = {v: field.zero() for v in g.vars}
    for v in g.vars:
        if not g.diff(v).eval_point(origin).is_zero():
            raise ValueError("germ is not singular at the origin")
    # Hessian corank
    H = []
    for a in g.vars:
        H.append([g.diff(a).diff(b).eval_point(origin) for b in g.vars])
    corank = nvars - fe_matrix_rank(H)
    if corank == 0:
        return 1, 0, 'A1'

    partials = [g.diff(v) for v in g.vars]
    N = germ.order
    for k in range(2, N + 1):
        monos = _monomials_upto(nvars, k)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for part in partials:
            for m in monos:
                if sum(m) > k:
                    continue
                row = [field.zero()] * len(monos)
                hit = False
                for e, c in part.terms.items():
                    tot = tuple(a + b for a, b in zip(e, m))
                    if sum(tot) <= k:
                        row[index[tot]] = row[index[tot]] + c
                        hit = True
                if hit:
                    rows.append(row)
        base_rank = fe_matrix_rank(rows)
        # determinacy certificate: every degree-k monomial already in span
        topdeg = [m for m in monos if sum(m) == k]
        aug = list(rows)
        for m in topdeg:
            row = [field.zero()] * len(monos)
            row[index[m]] = field.one()
            aug.append(row)
        if fe_matrix_rank(aug) == base_rank:
            mu = len(monos) - base_rank
            if corank == 1:
                return mu, 1, 'A%d' % mu
            return mu, corank, 'unclassified'
    return None, corank, 'undetermined'


RIDGE_JET_ORDER = 6


def ridge_germ(spec, ridge_point, jet_order=None):
    """the 3-variable germ of B at a ridge point, by the series inversion
    u = Q-hat and the solved x = u^2/(v f): returns u^4*g(y,z,u) - yz.

    The default jet order 6 certifies every germ up to 5-determinacy; the
    expected type here is 4-determined.
    """
    N = jet_order or RIDGE_JET_ORDER
    x3, x4 = ridge_point[3], ridge_point[4]
    K = None
    for c in ridge_point:
        if isinstance(c, FieldElem):
            K = c.field
            break
    if x4.is_zero():
        raise DegenerateSpecError("ridge point on H4; use the other chart")
    if x3.is_zero():
        raise DegenerateSpecError("ridge point on H3")
    v0 = x3 / x4

    V4 = ('x', 'y', 'z', 'u')
    X = MPoly.var(K, V4, 'x')
    Yv = MPoly.var(K, V4, 'y')
    Z = MPoly.var(K, V4, 'z')
    U = MPoly.var(K, V4, 'u')

    Q5 = spec.q_poly().lift(K)
    f5 = spec.f_poly().lift(K)

    # express Q and f in the ridge chart with an explicit v-variable
    Vvar = ('x', 'y', 'z', 'u', 'v_')
    V10 = SCROLL_VARS + Vvar
    chart_sub = {
        'z0': MPoly.var(K, V10, 'x'),
        'z1': MPoly.var(K, V10, 'y'),
        'z2': MPoly.var(K, V10, 'z'),
        'z3': MPoly.var(K, V10, 'v_'),
        'z4': MPoly.const(K, V10, 1),
    }
    Qhat = _on_vars(Q5, V10).subst(chart_sub).drop_vars(SCROLL_VARS)
    fhat = _on_vars(f5, V10).subst(chart_sub).drop_vars(SCROLL_VARS)

    # step 1: invert u = Qhat(x, y, z, v) for v = v0 + series(x, y, z, u)
    dQdv = Qhat.diff('v_')
    origin5 = {'x': K.zero(), 'y': K.zero(), 'z': K.zero(),
               'u': K.zero(), 'v_': v0}
    if dQdv.eval_point(origin5).is_zero():
        raise DegenerateSpecError("ridge transversality fails")

    # precision bookkeeping: x = u^2 * w with w = 1/(v f), and the germ is
    # u^4 w^2 - yz, so w (hence v and f along x) is only needed mod m^(M+1)
    M = max(N - 4, 0)
    Nx = max(N - 2, 2)

    v_series = MPoly.const(K, V4, v0)
    for _ in range(M.bit_length() + 2):
        val = _subst_trunc(Qhat, {'v_': v_series}, M).drop_vars(('v_',))
        der = _subst_trunc(dQdv, {'v_': v_series}, M).drop_vars(('v_',))
        h = _trunc(val - U, M)
        if h.is_zero():
            break
        v_series = _trunc(v_series - h * _series_inverse(der, M), M)
    chk = _subst_trunc(Qhat, {'v_': v_series}, M).drop_vars(('v_',))
    if not _trunc(chk - U, M).is_zero():
        raise AssertionError("series inversion of Q failed")

    # step 2: solve x * v * fhat = u^2 for x as a series in (y, z, u)
    x_series = MPoly.zero(K, V4)
    for _ in range(N + 1):
        vs = _subst_trunc(v_series, {'x': x_series}, M)
        fs = _subst_trunc(fhat, {'x': x_series, 'v_': vs}, M) \
            .drop_vars(('v_',))
        unit = _trunc(vs * fs, M)
        if unit.constant().is_zero():
            raise DegenerateSpecError("unit condition fails at ridge point "
                                      "(point on H3 or {f=0})")
        new_x = _trunc(U * U * _series_inverse(unit, M), Nx)
        if new_x == x_series:
            break
        x_series = new_x

    germ4 = _trunc(x_series * x_series - Yv * Z, N)
    # x no longer occurs; drop it
    germ3 = germ4.drop_vars(('x',))
    return LocalGerm(germ3, N, "ridge point v0=%r" % v0)


# ---------------------------------------------------------------------------
# appendix local model
# ---------------------------------------------------------------------------

def appendix_blowup_check():
    """the local model W = {x^2 = yz, w^2 = u^2 - x} in C^5 and its blowup
    along {x = y = z = 0}: singular locus, the two 3-fold ODPs, the fiber
    over the origin, and the separation of the four planes."""
    V = ('x', 'y', 'z', 'u', 'w')
    X, Yv, Z, U, W = [MPoly.var(QQ, V, v) for v in V]
    eq1 = X * X - Yv * Z
    eq2 = W * W - U * U + X
    report = {}

    # --- singular locus of W ---------------------------------------------
    J = [[eq.diff(v) for v in V] for eq in (eq1, eq2)]
    minors = []
    for a in range(5):
        for b in range(a + 1, 5):
            minors.append(J[0][a] * J[1][b] - J[0][b] * J[1][a])
    # the two candidate lines: x=y=z=0, w = +-u (parametrized by u itself)
    zeroQ5 = QQ.elem_from_rational(0)
    lines_ok = []
    for sign in (1, -1):
        param = {'x': zeroQ5, 'y': zeroQ5, 'z': zeroQ5, 'w': sign * U}
        vals = [eq1.subst(param), eq2.subst(param)]
        vals += [m.subst(param) for m in minors]
        lines_ok.append(all(p.is_zero() for p in vals))
    # converse: the minors contain y and z themselves; with y = z = 0 the
    # equations force x^2 = 0 and then w^2 = u^2
    has_y = any(m == Yv or m == -Yv for m in minors)
    has_z = any(m == Z or m == -Z for m in minors)
    zeroQ = QQ.elem_from_rational(0)
    eq1_yz0 = eq1.subst({'y': zeroQ, 'z': zeroQ})
    eq2_x0 = eq2.subst({'x': zeroQ})
    converse = (has_y and has_z and eq1_yz0 == X * X
                and eq2_x0 == W * W - U * U)
    report['sing_W'] = {
        'lines_are_singular': all(lines_ok),
        'converse_reduction': converse,
        'is_two_lines': all(lines_ok) and converse,
    }

    # --- blowup charts ----------------------------------------------------
    # center {x = y = z = 0}; chart maps substitute the center coordinates

    def _chart_map(eq, sub_names, chartvars):
        """substitute the center coordinates and land on the chart's
        variable tuple"""
        VU = V + tuple(v for v in chartvars if v not in V)
        sub = {k: _on_vars(p, VU) for k, p in sub_names.items()}
        out = _on_vars(eq, VU).subst(sub)
        dropped = tuple(v for v in V if v not in chartvars)
        return _on_vars(out.drop_vars(dropped), chartvars)

    charts = {}

    # chart X: (x, Y, Z, u, w) -> (x, xY, xZ, u, w); strict transform
    CX = ('x', 'Y', 'Z', 'u', 'w')
    x_, Y_, Z_, u_, w_ = [MPoly.var(QQ, CX, v) for v in CX]
    subX = {'y': x_ * Y_, 'z': x_ * Z_}
    e1 = _chart_map(eq1, subX, CX)
    # divide by x^2 (exceptional multiplicity of eq1)
    one_minus = MPoly.const(QQ, CX, 1) - Y_ * Z_
    assert e1 == x_ * x_ * one_minus
    e2 = _chart_map(eq2, subX, CX)
    strictX = [one_minus, e2]
    # smoothness: the Jacobian has a 2x2 minor that is a unit on the strict
    # transform (rows always contain d(e2)/dx = 1 and dZ(1-YZ) = -Y, with
    # Y invertible since YZ = 1)
    charts['X'] = {'strict': strictX, 'singular_points': 0,
                   'note': 'YZ=1 forces Y,Z units; Jacobian rank 2'}

    # chart Y: (X, y, Z, u, w) -> (yX, y, yZ, u, w)
    CY = ('X', 'y', 'Z', 'u', 'w')
    X_, y_, Z2, u2, w2 = [MPoly.var(QQ, CY, v) for v in CY]
    subY = {'x': y_ * X_, 'z': y_ * Z2}
    e1 = _chart_map(eq1, subY, CY)
    hyp = X_ * X_ - Z2
    assert e1 == y_ * y_ * hyp
    e2 = _chart_map(eq2, subY, CY)  # w^2 - u^2 + yX
    # eliminate Z = X^2: remaining hypersurface in (X, y, u, w)
    C4 = ('X', 'y', 'u', 'w')
    g4 = e2.drop_vars(('Z',))
    assert g4.vars == C4
    # singular points of g4: gradient zero on the hypersurface
    grads = [g4.diff(v) for v in C4]
    # gradient is (y, X, -2u, 2w): vanishes only at the origin
    origin = {v: QQ.elem_from_rational(0) for v in C4}
    grad_at_origin_zero = all(p.eval_point(origin).is_zero() for p in grads)
    # linear gradients with independent linear parts => origin is the only
    # common zero; certify by rank of the linear coefficient matrix
    lin_rows = []
    for p in grads:
        row = []
        for v in C4:
            e = [0] * 4
            e[C4.index(v)] = 1
            row.append(p.coeff(tuple(e)).vec[0])
        lin_rows.append(row)
    lin_rank = rank(lin_rows, 4)
    all_grads_linear = all(p.degree() <= 1 for p in grads)
    # Hessian of g4 at the origin: rank 4 <=> ordinary double point
    Hrows = []
    for a in C4:
        Hrows.append([g4.diff(a).diff(b).eval_point(origin)
                      for b in C4])
    hess_rank = fe_matrix_rank(Hrows)
    charts['Y'] = {'strict': [hyp, e2], 'singular_points': 1,
                   'gradient_vanishes_at_origin': grad_at_origin_zero,
                   'gradient_linear_rank': lin_rank,
                   'origin_is_only_singularity':
                       all_grads_linear and lin_rank == 4,
                   'hessian_rank': hess_rank,
                   'odp': hess_rank == 4 and lin_rank == 4,
                   'mu': 1 if hess_rank == 4 else None}

    # chart Z is the mirror image of chart Y under y <-> z; run it anyway
    CZ = ('X', 'Y', 'z', 'u', 'w')
    X3, Y3, z3, u3, w3 = [MPoly.var(QQ, CZ, v) for v in CZ]
    subZ = {'x': z3 * X3, 'y': z3 * Y3}
    e1 = _chart_map(eq1, subZ, CZ)
    hypz = X3 * X3 - Y3
    assert e1 == z3 * z3 * hypz
    e2z = _chart_map(eq2, subZ, CZ)
    C4z = ('X', 'z', 'u', 'w')
    g4z = e2z.drop_vars(('Y',))
    assert g4z.vars == C4z
    originz = {v: QQ.elem_from_rational(0) for v in C4z}
    Hrows = []
    for a in C4z:
        Hrows.append([g4z.diff(a).diff(b).eval_point(originz) for b in C4z])
    hess_rank_z = fe_matrix_rank(Hrows)
    charts['Z'] = {'strict': [hypz, e2z], 'singular_points': 1,
                   'hessian_rank': hess_rank_z,
                   'odp': hess_rank_z == 4,
                   'mu': 1 if hess_rank_z == 4 else None}

    report['charts'] = charts
    report['total_odps'] = (charts['Y']['singular_points']
                            * (1 if charts['Y']['odp'] else 0)
                            + charts['Z']['singular_points']
                            * (1 if charts['Z']['odp'] else 0))

    # --- fiber over the origin -------------------------------------------
    # in chart Y: y = u = w = 0 on the strict transform leaves {Z = X^2},
    # the affine conic parametrized by X; chart Z mirrors it; chart X gives
    # {YZ = 1}; together one smooth rational curve (a conic in the
    # exceptional plane)
    zeroQ = QQ.elem_from_rational(0)
    fib_y = [p.subst({'y': zeroQ, 'u': zeroQ, 'w': zeroQ})
             for p in charts['Y']['strict']]
    fib_y = [p.drop_vars(('y', 'u', 'w')) for p in fib_y if not p.is_zero()]
    # the only remaining equation must be the conic branch Z = X^2
    XY2 = ('X', 'Z')
    conic_eq = (MPoly.var(QQ, XY2, 'X') ** 2 - MPoly.var(QQ, XY2, 'Z'))
    fiber_is_conic = (len(fib_y) == 1
                      and (fib_y[0] == conic_eq or fib_y[0] == -conic_eq))
    report['fiber'] = {'single_rational_curve': fiber_is_conic,
                       'model': 'Z = X^2 (smooth conic through all charts)'}

    # --- the four planes --------------------------------------------------
    # P1(+-) = {x = y = 0, w = -+u}, P2(+-) = {x = z = 0, w = -+u}
    planes = {}
    for name, zero_var, sign in (('P1+', 'y', 1), ('P1-', 'y', -1),
                                 ('P2+', 'z', 1), ('P2-', 'z', -1)):
        # parametrize by the free center variable and u itself
        param = {'x': zeroQ, zero_var: zeroQ, 'w': sign * U}
        inside = all(eq.subst(param).is_zero() for eq in (eq1, eq2))
        planes[name] = {'in_W': inside,
                        'contains_line': 'L+' if sign == 1 else 'L-'}
    report['planes'] = planes

    # separation: the strict transform of P1(+-) only survives in chart Z
    # (normal direction [0:0:1]), of P2(+-) only in chart Y; so the pairs
    # (P1+, P2+) and (P1-, P2-) become disjoint after the blowup
    presence = {}
    for name, zero_var in (('P1+', 'y'), ('P1-', 'y'),
                           ('P2+', 'z'), ('P2-', 'z')):
        # plane P1: x = y = 0, z free -> in chart Y (y-direction) the
        # preimage off the center needs y != 0 but the plane has y = 0:
        # empty; in chart Z it survives
        pres = {'X': False,
                'Y': zero_var == 'z',
                'Z': zero_var == 'y'}
        presence[name] = pres
    separated = all(
        not any(presence[p1][c] and presence[p2][c] for c in ('X', 'Y', 'Z'))
        for p1, p2 in (('P1+', 'P2+'), ('P1-', 'P2-')))
    report['separation'] = {'presence': presence,
                            'pairs_disjoint': separated}
    return report


# ---------------------------------------------------------------------------
# the census
# ---------------------------------------------------------------------------

def census(spec, extras=()):
    """full singularity census of B plus the Euler-ledger hookup.

    extras: synthetic (mu, e(beta)) pairs injected into the ledger; an
    empty list reports the generic-family (open ledger) situation.
    """
    result = singular_points(spec)
    points = result['points']
    a1 = [p for p in points if p.classification == 'A1'
          and p.locus != 'ridge']
    a3 = [p for p in points if p.locus == 'ridge']
    extra_pts = [p for p in points if p.locus == 'extra']
    counts = {
        'A1_offridge': sum(p.size for p in a1),
        'ridge': sum(p.size for p in a3),
        'extras_found': sum(p.size for p in extra_pts),
    }
    ridge_ok = all(p.classification == 'A3' for p in a3)
    ledger = latticecalc.euler_ledger(list(extras))
    status = 'twistor-compatible' if ledger['closed'] else 'generic-family'
    return {
        'points': points,
        'counts': counts,
        'ridge_all_A3': ridge_ok,
        'residual_certificates': result['residuals'],
        'ledger': ledger,
        'status': status,
    }
