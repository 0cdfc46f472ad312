"""Reconstructing the hyperquadric through the five double curves.

Two independent routes: fit_span imposes curve containment on a generic
15-coefficient quadric and row-reduces, expecting the 2-dimensional kernel
spanned by Q and the scroll form; stepwise_construct rebuilds the quadric
block by block from the 26 intersection points, starting from a chosen
conic on the base plane.  The two must agree modulo the scroll form.
"""

from fractions import Fraction

from .exactalg import (QQ, MPoly, FieldElem, rank, kernel_basis,
                       solve_linear)
from .scrollgeom import SCROLL_VARS, scroll_equation
from .branchfamily import Q_ORDER, DegenerateSpecError, double_curves

# the 15 monomials z_i z_j (i <= j) index the space of quadrics on P^4
QUAD_MONOS = Q_ORDER


def quad_vector(p):
    """15-coefficient vector of a quadratic form on the scroll variables"""
    if p.vars != SCROLL_VARS:
        raise ValueError("expected a polynomial on the scroll variables")
    out = []
    for (i, j) in QUAD_MONOS:
        e = [0] * 5
        e[i] += 1
        e[j] += 1
        out.append(Fraction(p.coeff(tuple(e)).vec[0]))
    return out


def quad_from_vector(vec):
    """quadratic form from its 15-coefficient vector"""
    out = MPoly.zero(QQ, SCROLL_VARS)
    for (i, j), c in zip(QUAD_MONOS, vec):
        m = (MPoly.var(QQ, SCROLL_VARS, SCROLL_VARS[i])
             * MPoly.var(QQ, SCROLL_VARS, SCROLL_VARS[j]))
        out = out + Fraction(c) * m
    return out


def _linear_substitution(lin_gens):
    """substitution killing the linear generators, plus the surviving
    variables.  Coordinate generators set their variable to zero; a general
    linear form solves for its largest coefficient."""
    sub = {}
    killed = []
    general = []
    for g in lin_gens:
        names = [v for v in g.vars]
        support = []
        for v in names:
            e = [0] * len(names)
            e[names.index(v)] = 1
            if not g.coeff(tuple(e)).is_zero():
                support.append(v)
        if len(support) == 1:
            sub[support[0]] = QQ.elem_from_rational(0)
            killed.append(support[0])
        else:
            general.append(g)
    for g in general:
        coeffs = {}
        for v in g.vars:
            if v in killed:
                continue
            e = [0] * len(g.vars)
            e[g.vars.index(v)] = 1
            c = Fraction(g.coeff(tuple(e)).vec[0])
            if c != 0:
                coeffs[v] = c
        if not coeffs:
            raise DegenerateSpecError("linear generator dies on the "
                                      "coordinate cuts")
        elim = max(coeffs, key=lambda v: abs(coeffs[v]))
        rest = [v for v in coeffs if v != elim]
        repl = MPoly.zero(QQ, SCROLL_VARS)
        for v in rest:
            repl = repl - (coeffs[v] / coeffs[elim]) * MPoly.var(
                QQ, SCROLL_VARS, v)
        sub[elim] = repl
        killed.append(elim)
    remaining = tuple(v for v in SCROLL_VARS if v not in killed)
    return sub, killed, remaining


def _restriction_vector(p, sub, killed, remaining):
    """coefficient vector of p restricted by the substitution, on the
    degree-2 monomial basis of the surviving variables"""
    q = p.subst(sub).drop_vars(tuple(killed))
    monos = [(i, j) for i in range(len(remaining))
             for j in range(i, len(remaining))]
    out = []
    for (i, j) in monos:
        e = [0] * len(remaining)
        e[i] += 1
        e[j] += 1
        out.append(Fraction(q.coeff(tuple(e)).vec[0]))
    return out


def containment_conditions(curve):
    """linear conditions on the 15 quadric coefficients forcing containment
    of a double curve.

    The restriction of an admissible quadric to the curve's linear span
    must lie in the span of the restrictions of the curve's quadratic
    generators: one generator (5 conditions) for the plane conics, the
    pencil (8 conditions) for the quartics.
    """
    lin_gens = [g for g in curve.gens if g.degree() == 1]
    quad_gens = [g for g in curve.gens if g.degree() == 2]
    if not lin_gens or not quad_gens:
        raise ValueError("curve generators must include linear and "
                         "quadratic parts")
    sub, killed, remaining = _linear_substitution(lin_gens)
    span = [_restriction_vector(g, sub, killed, remaining)
            for g in quad_gens]
    span = [v for v in span if any(c != 0 for c in v)]
    if not span:
        raise DegenerateSpecError("curve C%d has no quadratic restriction"
                                  % curve.index)
    n = len(span[0])
    # conditions: vectors orthogonal to the span
    witnesses = kernel_basis(span, n)
    # restriction of each basis monomial
    columns = []
    for (i, j) in QUAD_MONOS:
        m = (MPoly.var(QQ, SCROLL_VARS, SCROLL_VARS[i])
             * MPoly.var(QQ, SCROLL_VARS, SCROLL_VARS[j]))
        columns.append(_restriction_vector(m, sub, killed, remaining))
    rows = []
    for w in witnesses:
        rows.append([sum(wk * col[k] for k, wk in enumerate(w))
                     for col in columns])
    return {'rows': rows, 'rank': rank(rows, 15),
            'curve': curve.index, 'span_dim': len(span)}


class QuadricSpace(object):
    """linear subspace of the 15-dimensional space of quadrics on P^4"""

    def __init__(self, basis):
        self.basis = [list(map(Fraction, b)) for b in basis]
        if self.basis and rank(self.basis, 15) != len(self.basis):
            raise ValueError("basis vectors are dependent")

    @property
    def dimension(self):
        return len(self.basis)

    def contains(self, vec):
        vec = list(map(Fraction, vec))
        if all(c == 0 for c in vec):
            return True
        if not self.basis:
            return False
        return rank(self.basis + [vec], 15) == len(self.basis)

    def __repr__(self):
        return "QuadricSpace(dim %d)" % self.dimension


def fit_span(spec):
    """kernel of the stacked containment conditions over all five curves.

    Returns a report with the QuadricSpace, the genericity verdict, and
    membership checks for the spec's Q and the scroll form.
    """
    curves = double_curves(spec)
    all_rows = []
    per_curve = {}
    for c in curves:
        cond = containment_conditions(c)
        per_curve[c.index] = cond
        all_rows.extend(cond['rows'])
    basis = kernel_basis(all_rows, 15)
    space = QuadricSpace(basis)
    qvec = quad_vector(spec.q_poly())
    gvec = quad_vector(scroll_equation())
    report = {
        'space': space,
        'dimension': space.dimension,
        'non_generic': space.dimension != 2,
        'contains_Q': space.contains(qvec),
        'contains_scroll': space.contains(gvec),
        'conditions': per_curve,
        'rows': all_rows,
    }
    return report


def drop_one_curve_dims(spec):
    """kernel dimension after removing each single curve's conditions; on a
    generic spec every removal strictly increases the dimension"""
    curves = double_curves(spec)
    conds = {c.index: containment_conditions(c)['rows'] for c in curves}
    out = {}
    for skip in conds:
        rows = [r for i, rs in conds.items() if i != skip for r in rs]
        out[skip] = len(kernel_basis(rows, 15))
    return out


# ---------------------------------------------------------------------------
# the stepwise construction
# ---------------------------------------------------------------------------

# conic monomial basis on the base coordinates (z0, z1, z2)
CONIC_MONOS = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def conic_vector(p):
    """6-coefficient vector of a conic in (z0, z1, z2)"""
    if p.vars != SCROLL_VARS:
        raise ValueError("expected a polynomial on the scroll variables")
    out = []
    for (i, j) in CONIC_MONOS:
        e = [0] * 5
        e[i] += 1
        e[j] += 1
        out.append(Fraction(p.coeff(tuple(e)).vec[0]))
    return out


def _conic_eval(qvec, coords):
    """value of the conic (6-vector) at projective coordinates"""
    K = None
    for c in coords:
        if isinstance(c, FieldElem):
            K = c.field
            break
    val = K.zero()
    for (i, j), c in zip(CONIC_MONOS, qvec):
        val = val + coords[i] * coords[j] * c
    return val


def _realify(row_elems, rhs_elem):
    """split a linear condition with number-field coefficients into
    rational rows: one per power-basis coordinate"""
    deg = rhs_elem.field.degree
    rows = []
    rhss = []
    for k in range(deg):
        rows.append([Fraction(x.vec[k]) for x in row_elems])
        rhss.append(-Fraction(rhs_elem.vec[k]))
    return rows, rhss


def stepwise_construct(spec, q_choice=None, groups=None):
    """rebuild the quadric from the 26 points, one coefficient block at a
    time.

    q_choice: 6-coefficient conic on the base plane, required to pass
    through the four C3-C4 points (default: the restriction of the spec's
    own Q).  The z4-block is pinned by the points on {z3 = 0}, the z3-block
    by the points on {z4 = 0}, the z3z4 coefficient by a ridge point; each
    block's linear system is stacked, realified, and checked for full rank
    before solving.
    """
    from .branchfamily import curve_intersections
    if groups is None:
        groups = curve_intersections(spec)
    if q_choice is None:
        q_choice = conic_vector(spec.q_poly())
    q_choice = [Fraction(c) for c in q_choice]
    if all(c == 0 for c in q_choice):
        raise ValueError("q-choice is the zero conic")

    # q must vanish on the four C3-C4 points
    for p in groups[(3, 4)]:
        if not _conic_eval(q_choice, p.coords).is_zero():
            raise ValueError("q-choice misses a C3-C4 point")

    def block_system(point_groups, other_index):
        """rows of the 4-unknown system (w0..w3) for the block
        q + w0 z0 z_o + w1 z1 z_o + w2 z2 z_o + w3 z_o^2, evaluated at
        points with the complementary coordinate zero"""
        rows = []
        rhss = []
        for key in point_groups:
            for p in groups[key]:
                z = p.coords
                zo = z[other_index]
                row = [z[0] * zo, z[1] * zo, z[2] * zo, zo * zo]
                rhs = _conic_eval(q_choice, z)
                r, b = _realify(row, rhs)
                rows.extend(r)
                rhss.extend(b)
        return rows, rhss

    # z4-block from points on H3 = {z3 = 0}
    rows_b, rhs_b = block_system([(1, 3), (2, 3), (3, 5)], 4)
    if rank(rows_b, 4) != 4:
        return {'non_generic': True,
                'reason': 'H3 point conditions are rank-deficient'}
    sol_b = solve_linear(rows_b, rhs_b)
    if sol_b is None:
        return {'non_generic': True,
                'reason': 'H3 point conditions are inconsistent'}
    b = sol_b[0]

    # z3-block from points on H4 = {z4 = 0}
    rows_a, rhs_a = block_system([(1, 4), (2, 4), (4, 5)], 3)
    if rank(rows_a, 4) != 4:
        return {'non_generic': True,
                'reason': 'H4 point conditions are rank-deficient'}
    sol_a = solve_linear(rows_a, rhs_a)
    if sol_a is None:
        return {'non_generic': True,
                'reason': 'H4 point conditions are inconsistent'}
    a = sol_a[0]

    # z3 z4 coefficient from a ridge point (0,0,0,x3,x4)
    rows_c = []
    rhs_c = []
    p2 = groups[(1, 2)][0]
    x3, x4 = p2.coords[3], p2.coords[4]
    row = [x3 * x4]
    rhs = x3 * x3 * a[3] + x4 * x4 * b[3]
    r, bb = _realify(row, rhs)
    rows_c.extend(r)
    rhs_c.extend(bb)
    if rank(rows_c, 1) != 1:
        return {'non_generic': True,
                'reason': 'ridge condition degenerates'}
    sol_c = solve_linear(rows_c, rhs_c)
    if sol_c is None:
        return {'non_generic': True,
                'reason': 'ridge conditions are inconsistent'}
    c = sol_c[0][0]

    # assemble the 15-vector: base conic + z3-block + z4-block + cross term
    vec = [Fraction(0)] * 15
    for (idx, mono) in enumerate(QUAD_MONOS):
        if mono[1] <= 2:
            vec[idx] = q_choice[CONIC_MONOS.index(mono)]
        elif mono == (3, 3):
            vec[idx] = a[3]
        elif mono == (4, 4):
            vec[idx] = b[3]
        elif mono == (3, 4):
            vec[idx] = c
        elif mono[1] == 3:
            vec[idx] = a[mono[0]]
        elif mono[1] == 4:
            vec[idx] = b[mono[0]]
    poly = quad_from_vector(vec)

    # containment verification against all five curves
    curves = double_curves(spec)
    contains = True
    for cv in curves:
        cond = containment_conditions(cv)
        for rrow in cond['rows']:
            if sum(rk * vk for rk, vk in zip(rrow, vec)) != 0:
                contains = False
    return {'non_generic': False, 'vector': vec, 'poly': poly,
            'a': a, 'b': b, 'c': c,
            'contains_all_curves': contains}


def same_mod_scroll(v1, v2):
    """are two quadric vectors equal up to scale and the scroll form?
    (c v1 - c' v2 in span{scroll} for some nonzero c, c')"""
    gvec = quad_vector(scroll_equation())
    v1 = list(map(Fraction, v1))
    v2 = list(map(Fraction, v2))
    # v2 must lie in span{v1, G}
    return rank([v1, gvec, v2], 15) == rank([v1, gvec], 15)
