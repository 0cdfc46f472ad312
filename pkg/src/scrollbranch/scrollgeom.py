"""The quadric scroll Y = {z0^2 = z1z2} in P^4 and its charts.

Y is singular exactly along the ridge line l = {z0 = z1 = z2 = 0}.  Two
affine charts cover Y away from l; two more cover neighborhoods of l.  A
hyperplane section of Y is a pair of planes, a double plane, or a cone,
depending on how the hyperplane meets l and the base conic.
"""

from fractions import Fraction

from .exactalg import (QQ, MPoly, FieldElem, binary_form_roots)

SCROLL_VARS = ('z0', 'z1', 'z2', 'z3', 'z4')

Y_CHARTS = ('z1', 'z2')
RIDGE_CHARTS = ('ridge3', 'ridge4')


def scroll_equation(field=None):
    """z0^2 - z1z2 as an MPoly"""
    f = field or QQ
    z0 = MPoly.var(f, SCROLL_VARS, 'z0')
    z1 = MPoly.var(f, SCROLL_VARS, 'z1')
    z2 = MPoly.var(f, SCROLL_VARS, 'z2')
    return z0 * z0 - z1 * z2


def _as_elem(field, x):
    if isinstance(x, FieldElem):
        return x if x.field is field else field.elem_from_rational(
            x.rational_value())
    return field.elem_from_rational(x)


class Hyperplane(object):
    """hyperplane sum(a_i z_i) = 0, coefficients up to scale"""

    def __init__(self, coeffs, field=None):
        self.field = field or QQ
        c = [_as_elem(self.field, x) for x in coeffs]
        if len(c) != 5:
            raise ValueError("a hyperplane needs 5 coefficients")
        if all(x.is_zero() for x in c):
            raise ValueError("zero hyperplane")
        self.coeffs = tuple(c)

    def poly(self):
        out = MPoly.zero(self.field, SCROLL_VARS)
        for v, c in zip(SCROLL_VARS, self.coeffs):
            out = out + MPoly.var(self.field, SCROLL_VARS, v) * c
        return out

    def __repr__(self):
        return "Hyperplane%s" % (list(self.coeffs),)


class SectionType(object):
    """result of classify_section"""

    def __init__(self, kind, vertex=None):
        self.kind = kind        # 'PairOfPlanes' | 'DoublePlane' | 'Cone'
        self.vertex = vertex    # projective 5-tuple for cones

    def __repr__(self):
        if self.kind == 'Cone':
            return "Cone(vertex=%s)" % (self.vertex,)
        return self.kind


def classify_section(H):
    """hyperplane section of Y: planes or a cone.

    The section degenerates to planes exactly when H contains the ridge
    line (a3 = a4 = 0); it is a double plane when the induced line in the
    base plane is tangent to the base conic, detected by the vanishing of
    a0^2 - 4a1a2.  Otherwise the section is a cone with vertex at l cap H.
    """
    a = H.coeffs
    if a[3].is_zero() and a[4].is_zero():
        disc = a[0] * a[0] - 4 * a[1] * a[2]
        if disc.is_zero():
            return SectionType('DoublePlane')
        return SectionType('PairOfPlanes')
    zero = H.field.zero()
    vertex = (zero, zero, zero, a[4], -a[3])
    return SectionType('Cone', vertex=vertex)


class ChartPoint(object):
    """affine point in one of the four charts of Y.

    The two Y-charts take 3 coordinates (s, t, u) and embed as
    [s : 1 : s^2 : t : u] (z1-chart) or [s : s^2 : 1 : t : u] (z2-chart).
    The ridge charts take 4 coordinates (x, y, z, v) with x^2 = yz and
    embed as [x : y : z : v : 1] (ridge4) or [x : y : z : 1 : v] with the
    last slot meaning z4/z3 (ridge3).
    """

    def __init__(self, chart, coords, field=None):
        if chart not in Y_CHARTS + RIDGE_CHARTS:
            raise ValueError("unknown chart %r" % chart)
        self.chart = chart
        self.field = field or QQ
        c = tuple(_as_elem(self.field, x) for x in coords)
        need = 3 if chart in Y_CHARTS else 4
        if len(c) != need:
            raise ValueError("%s chart needs %d coordinates" % (chart, need))
        if chart in RIDGE_CHARTS:
            x, y, z = c[0], c[1], c[2]
            if not (x * x - y * z).is_zero():
                raise ValueError("ridge-chart point violates x^2 = yz")
        self.coords = c

    def __repr__(self):
        return "ChartPoint(%s, %s)" % (self.chart, list(self.coords))


def chart_embed(p):
    """projective coordinates on Y of a chart point"""
    f = p.field
    one = f.one()
    if p.chart == 'z1':
        s, t, u = p.coords
        return (s, one, s * s, t, u)
    if p.chart == 'z2':
        s, t, u = p.coords
        return (s, s * s, one, t, u)
    if p.chart == 'ridge4':
        x, y, z, v = p.coords
        return (x, y, z, v, one)
    x, y, z, v = p.coords  # ridge3
    return (x, y, z, one, v)


def on_scroll(q):
    """is the projective point on Y?"""
    return (q[0] * q[0] - q[1] * q[2]).is_zero()


def chart_pull(q, chart):
    """chart coordinates of a projective point on Y; the chart's coordinate
    must be nonzero and the point must satisfy the scroll equation."""
    if len(q) != 5:
        raise ValueError("projective point needs 5 coordinates")
    field = None
    for c in q:
        if isinstance(c, FieldElem) and not c.field.is_rational:
            field = c.field
            break
    field = field or QQ
    q = tuple(_as_elem(field, c) for c in q)
    if all(c.is_zero() for c in q):
        raise ValueError("zero vector is not a projective point")
    if not on_scroll(q):
        raise ValueError("point is not on the scroll")
    if chart == 'z1':
        if q[1].is_zero():
            raise ValueError("point outside the z1-chart")
        inv = q[1].inverse()
        return ChartPoint('z1', (q[0] * inv, q[3] * inv, q[4] * inv), field)
    if chart == 'z2':
        if q[2].is_zero():
            raise ValueError("point outside the z2-chart")
        inv = q[2].inverse()
        return ChartPoint('z2', (q[0] * inv, q[3] * inv, q[4] * inv), field)
    if chart == 'ridge4':
        if q[4].is_zero():
            raise ValueError("point outside the ridge4 chart")
        inv = q[4].inverse()
        return ChartPoint('ridge4',
                          (q[0] * inv, q[1] * inv, q[2] * inv, q[3] * inv),
                          field)
    if chart == 'ridge3':
        if q[3].is_zero():
            raise ValueError("point outside the ridge3 chart")
        inv = q[3].inverse()
        return ChartPoint('ridge3',
                          (q[0] * inv, q[1] * inv, q[2] * inv, q[4] * inv),
                          field)
    raise ValueError("unknown chart %r" % chart)


def ridge_points(Q):
    """the two points of {Q = 0} on the ridge line, via the binary form
    Q(0,0,0,z3,z4); flags the tangent (double-root) case.

    Returns a dict with the projective points, their multiplicities, the
    Root objects, and a degeneracy flag.
    """
    if not Q.field.is_rational:
        raise ValueError("ridge_points expects rational coefficients")
    zero = QQ.elem_from_rational(0)
    restricted = Q.subst({'z0': zero, 'z1': zero, 'z2': zero})
    if restricted.is_zero():
        raise ValueError("quadric vanishes on the ridge line "
                         "(transversality fails)")
    b = restricted.drop_vars(('z0', 'z1', 'z2'))
    roots = binary_form_roots(b)
    pts = []
    degenerate = False
    for r in roots:
        if r.mult > 1:
            degenerate = True
        z = r.field.zero()
        pts.append(((z, z, z, r.x, r.y), r.mult, r))
    return {'points': pts, 'roots': roots, 'degenerate': degenerate}
