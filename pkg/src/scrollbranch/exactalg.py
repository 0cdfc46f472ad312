"""Exact arithmetic core.

Rationals, small number fields Q[t]/(m) with deg m <= 4, sparse multivariate
polynomials, lex ideal reduction, subresultant-PRS resultants, binary-form
roots, and a zero-dimensional triangular solver.  Everything is exact; there
is no floating point anywhere.  Univariate factorization over Q is delegated
to sympy (see _factor_univariate); all other arithmetic is our own.
"""

from fractions import Fraction
import itertools


class FieldError(Exception):
    """incompatible or malformed field descriptors"""


class DegreeError(Exception):
    """unsupported degree (by design the fields stop at degree 4)"""


class DimensionError(Exception):
    """a solution set that was supposed to be finite is not"""

    def __init__(self, msg, eliminant=None):
        super().__init__(msg)
        self.eliminant = eliminant


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not an exact rational: %r" % (x,))


# ---------------------------------------------------------------------------
# univariate helpers over Q (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _uv_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _uv_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _uv_trim(out)


def _uv_scale(a, c):
    if c == 0:
        return []
    return [x * c for x in a]


def _uv_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _uv_trim(out)


def _uv_divmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = Fraction(1) / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        _uv_trim(a)
        if not a:
            break
    return q, a


def _uv_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _uv_divmod(a, b)[1]
    if a:
        inv = Fraction(1) / a[-1]
        a = [x * inv for x in a]
    return a


def _uv_eval(a, x):
    v = Fraction(0)
    for c in reversed(a):
        v = v * x + c
    return v


def _uv_diff(a):
    return _uv_trim([a[i] * i for i in range(1, len(a))])


def sturm_real_roots(coeffs):
    """number of distinct real roots of a squarefree rational polynomial,
    counted by the classical Sturm chain at -infinity and +infinity."""
    p = _uv_trim([_frac(c) for c in coeffs])
    if len(p) <= 1:
        return 0
    chain = [p, _uv_diff(p)]
    while chain[-1]:
        r = _uv_divmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(_uv_scale(r, -1))

    def signs_at_inf(sign):
        out = []
        for q in chain:
            if not q:
                continue
            s = 1 if q[-1] > 0 else -1
            if sign < 0 and (len(q) - 1) % 2 == 1:
                s = -s
            out.append(s)
        return out

    def changes(seq):
        return sum(1 for x, y in zip(seq, seq[1:]) if x * y < 0)

    return changes(signs_at_inf(-1)) - changes(signs_at_inf(1))


def _factor_univariate(coeffs):
    """factor a rational univariate polynomial (low-first coefficient list)
    into monic irreducible factors over Q via sympy.

    Returns (content, [(factor_coeffs_monic_low_first, multiplicity), ...]).
    This is the only place the package leans on sympy.
    """
    import sympy

    x = sympy.Symbol('x')
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
               for i, c in enumerate(coeffs))
    content, factors = sympy.factor_list(sympy.Poly(expr, x))
    out = []
    for fac, mult in factors:
        fc = [Fraction(str(c)) for c in reversed(fac.all_coeffs())]
        lead = fc[-1]
        if lead != 1:
            content = Fraction(str(content)) * lead ** mult \
                if not isinstance(content, Fraction) else content * lead ** mult
            fc = [c / lead for c in fc]
        out.append((fc, mult))
    if not isinstance(content, Fraction):
        content = Fraction(str(content))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return content, out


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------

class NumberField(object):
    """Q[t]/(m(t)) with m monic squarefree of degree <= 4.

    minpoly: the low-first list (c0..c_{d-1}) with m = t^d + sum c_i t^i, or
    None for Q itself.  conj_image: the image of t under the declared
    conjugation as a power-basis vector, or None when complex conjugation is
    not induced by a field automorphism (possible for degree >= 3).
    """

    def __init__(self, minpoly=None, conj_image=None, name='t'):
        if minpoly is None:
            self.minpoly = None
            self.degree = 1
            self.conj_image = (Fraction(1),)  # t -> t vacuously
            self.name = name
            self._redtab = None
        else:
            m = [_frac(c) for c in minpoly]
            d = len(m)
            if d < 1 or d > 4:
                raise DegreeError("number fields stop at degree 4")
            self.minpoly = tuple(m)
            self.degree = d
            self.name = name
            # reduction table: t^k as a vector, for k = 0 .. 2d-2
            tab = []
            for k in range(d):
                v = [Fraction(0)] * d
                v[k] = Fraction(1)
                tab.append(v)
            for k in range(d, 2 * d - 1):
                prev = tab[k - 1]
                v = [Fraction(0)] * d
                for i in range(d - 1):
                    v[i + 1] += prev[i]
                top = prev[d - 1]
                if top:
                    for i in range(d):
                        v[i] -= top * m[i]
                tab.append(v)
            self._redtab = tab
            if conj_image is None:
                self.conj_image = None
            else:
                ci = tuple(_frac(c) for c in conj_image)
                if len(ci) != d:
                    raise FieldError("conjugation image has wrong length")
                self.conj_image = ci
                self._check_conjugation()

    def _unit_vec(self):
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(1)
        return tuple(v)

    def _check_conjugation(self):
        t_img = FieldElem(self, self.conj_image)
        # conjugation must kill the minimal polynomial ...
        acc = self.elem_from_rational(1)
        val = self.elem_from_rational(0)
        coeffs = list(self.minpoly) + [Fraction(1)]
        for c in coeffs:
            val = val + acc * c
            acc = acc * t_img
        if not val.is_zero():
            raise FieldError("declared conjugation does not fix the field")
        # ... and be an involution
        twice = t_img.conj()
        if twice.vec != tuple(self._redtab[1]):
            raise FieldError("declared conjugation is not involutive")

    @property
    def is_rational(self):
        return self.minpoly is None

    def elem(self, vec):
        v = [_frac(c) for c in vec]
        if len(v) != self.degree:
            raise FieldError("wrong vector length for this field")
        return FieldElem(self, tuple(v))

    def elem_from_rational(self, c):
        v = [Fraction(0)] * self.degree
        v[0] = _frac(c)
        return FieldElem(self, tuple(v))

    def gen(self):
        if self.degree == 1:
            raise FieldError("Q has no generator")
        v = [Fraction(0)] * self.degree
        v[1] = Fraction(1)
        return FieldElem(self, tuple(v))

    def zero(self):
        return FieldElem(self, tuple([Fraction(0)] * self.degree))

    def one(self):
        return FieldElem(self, self._unit_vec())

    def _reduce_product(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        tmp = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    tmp[i + j] += x * y
        out = [Fraction(0)] * d
        tab = self._redtab
        for k, c in enumerate(tmp):
            if c:
                row = tab[k]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def _invert(self, vec):
        d = self.degree
        if d == 1:
            if vec[0] == 0:
                raise ZeroDivisionError("division by zero field element")
            return (Fraction(1) / vec[0],)
        # extended Euclid in Q[t] against the minimal polynomial
        m = list(self.minpoly) + [Fraction(1)]
        a = _uv_trim(list(vec))
        if not a:
            raise ZeroDivisionError("division by zero field element")
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _uv_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _uv_add(s0, _uv_scale(_uv_mul(q, s1), -1))
        if len(r0) != 1:
            raise FieldError("minimal polynomial is not squarefree/irreducible"
                             " against this element")
        inv = _uv_scale(s0, Fraction(1) / r0[0])
        inv = (inv + [Fraction(0)] * d)[:d]
        return tuple(inv)

    def __repr__(self):
        if self.is_rational:
            return "QQ"
        return "NumberField(%s, deg %d)" % (list(self.minpoly), self.degree)


class FieldElem(object):
    """element of a NumberField as a power-basis vector of rationals."""

    __slots__ = ('field', 'vec')

    def __init__(self, field, vec):
        self.field = field
        self.vec = vec

    def is_zero(self):
        return all(c == 0 for c in self.vec)

    def is_rational(self):
        return all(c == 0 for c in self.vec[1:])

    def rational_value(self):
        if not self.is_rational():
            raise FieldError("element is not rational")
        return self.vec[0]

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                if other.field.is_rational:
                    return self.field.elem_from_rational(other.vec[0])
                if self.field.is_rational:
                    raise _CoerceLeft(other.field)
                raise FieldError("mixed number fields")
            return other
        return self.field.elem_from_rational(other)

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except _CoerceLeft as c:
            return c.field.elem_from_rational(self.vec[0]) + other
        return FieldElem(self.field,
                         tuple(a + b for a, b in zip(self.vec, o.vec)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.vec))

    def __sub__(self, other):
        if isinstance(other, FieldElem):
            return self.__add__(-other)
        return self.__add__(-self.field.elem_from_rational(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except _CoerceLeft as c:
            return c.field.elem_from_rational(self.vec[0]) * other
        return FieldElem(self.field,
                         self.field._reduce_product(self.vec, o.vec))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElem(self.field, self.field._invert(self.vec))

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        out = self.field.one()
        base = self
        n = int(n)
        if n < 0:
            base = self.inverse()
            n = -n
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self):
        f = self.field
        if f.is_rational:
            return self
        if f.conj_image is None:
            raise FieldError("no conjugation automorphism declared "
                             "for this field")
        img = FieldElem(f, f.conj_image)
        out = f.zero()
        acc = f.one()
        for c in self.vec:
            out = out + acc * c
            acc = acc * img
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.vec == other.vec
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.vec[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.vec))

    def __repr__(self):
        if self.field.is_rational or self.is_rational():
            return str(self.vec[0])
        return "FieldElem%s" % (list(self.vec),)


class _CoerceLeft(Exception):
    """internal: the left operand must be lifted into the right's field"""

    def __init__(self, field):
        self.field = field


QQ = NumberField()


def charpoly_rational(e):
    """characteristic polynomial over Q (monic, low-first coefficient list) of
    multiplication by e on its field, degree = field degree."""
    f = e.field
    d = f.degree
    if d == 1:
        return [-e.vec[0], Fraction(1)]
    # columns of the multiplication matrix
    cols = []
    basis = [FieldElem(f, tuple(Fraction(1) if i == k else Fraction(0)
                                for i in range(d))) for k in range(d)]
    for b in basis:
        cols.append((e * b).vec)
    # det(x*I - M) by expansion with univariate entries (d <= 4)
    mat = [[([-cols[j][i]] if i != j else [-cols[j][i], Fraction(1)])
            for j in range(d)] for i in range(d)]

    def det(rows, cols_idx):
        if len(cols_idx) == 1:
            return mat[rows[0]][cols_idx[0]]
        acc = []
        for k, j in enumerate(cols_idx):
            minor = det(rows[1:], cols_idx[:k] + cols_idx[k + 1:])
            term = _uv_mul(mat[rows[0]][j], minor)
            if k % 2:
                term = _uv_scale(term, -1)
            acc = _uv_add(acc, term)
        return acc

    p = det(tuple(range(d)), tuple(range(d)))
    if p and p[-1] < 0:
        p = _uv_scale(p, -1)
    return p


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------

class MPoly(object):
    """sparse polynomial: exponent tuples -> nonzero FieldElem coefficients."""

    __slots__ = ('field', 'vars', 'terms')

    def __init__(self, field, variables, terms=None):
        self.field = field
        self.vars = tuple(variables)
        t = {}
        if terms:
            for exp, c in terms.items():
                if not isinstance(c, FieldElem):
                    c = field.elem_from_rational(c)
                elif c.field is not field:
                    if c.field.is_rational:
                        c = field.elem_from_rational(c.vec[0])
                    else:
                        raise FieldError("coefficient from a different field")
                if not c.is_zero():
                    t[tuple(exp)] = c
        self.terms = t

    # -- constructors --
    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables)

    @classmethod
    def const(cls, field, variables, c):
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, field, variables, name, power=1):
        i = list(variables).index(name)
        exp = [0] * len(variables)
        exp[i] = power
        return cls(field, variables, {tuple(exp): 1})

    # -- queries --
    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def constant(self):
        z = (0,) * len(self.vars)
        return self.terms.get(z, self.field.zero())

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.field.zero())

    # -- ring operations --
    def _compat(self, other):
        if other.field is not self.field or other.vars != self.vars:
            if other.field.is_rational and other.field is not self.field:
                return other.lift(self.field)
            if self.field.is_rational and not other.field.is_rational:
                raise _CoerceLeft(other.field)
            raise FieldError("polynomials over different fields/variables")
        return other

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.field, self.vars, other)
        try:
            o = self._compat(other)
        except _CoerceLeft as c:
            return self.lift(c.field) + other
        t = dict(self.terms)
        for exp, c in o.terms.items():
            cur = t.get(exp)
            s = c if cur is None else cur + c
            if s.is_zero():
                t.pop(exp, None)
            else:
                t[exp] = s
        out = MPoly(self.field, self.vars)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MPoly(self.field, self.vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.field, self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, FieldElem) and other.field is not self.field \
                    and not other.field.is_rational and self.field.is_rational:
                return self.lift(other.field) * other
            c = other if isinstance(other, FieldElem) \
                else self.field.elem_from_rational(other)
            if isinstance(c, FieldElem) and c.field is not self.field:
                c = self.field.elem_from_rational(c.vec[0]) \
                    if c.field.is_rational else c
            out = MPoly(self.field, self.vars)
            if (isinstance(c, FieldElem) and c.is_zero()):
                return out
            out.terms = {e: x * c for e, x in self.terms.items()}
            out.terms = {e: x for e, x in out.terms.items() if not x.is_zero()}
            return out
        try:
            o = self._compat(other)
        except _CoerceLeft as c:
            return self.lift(c.field) * other
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                cur = t.get(e)
                s = p if cur is None else cur + p
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
        out = MPoly(self.field, self.vars)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        out = MPoly.const(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return (self.field is other.field and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.field), self.vars,
                     frozenset(self.terms.items())))

    def lift(self, field):
        """re-express a rational-coefficient polynomial over a larger field"""
        if field is self.field:
            return self
        if not self.field.is_rational:
            raise FieldError("can only lift from Q")
        out = MPoly(field, self.vars)
        out.terms = {e: field.elem_from_rational(c.vec[0])
                     for e, c in self.terms.items()}
        return out

    def drop_vars(self, names):
        """forget variables that do not occur (exponent must be 0)"""
        idx = [i for i, v in enumerate(self.vars) if v not in names]
        for e in self.terms:
            for i, v in enumerate(self.vars):
                if v in names and e[i]:
                    raise ValueError("variable %s still occurs" % v)
        out = MPoly(self.field, tuple(self.vars[i] for i in idx))
        out.terms = {tuple(e[i] for i in idx): c for e, c in self.terms.items()}
        return out

    def rename_vars(self, mapping):
        out = MPoly(self.field, tuple(mapping.get(v, v) for v in self.vars))
        out.terms = dict(self.terms)
        return out

    def subst(self, assignment):
        """substitute variables by polynomials or field elements (partial)"""
        field = self.field
        for v in assignment.values():
            if isinstance(v, MPoly) and not v.field.is_rational:
                if field.is_rational:
                    field = v.field
                elif v.field is not field:
                    raise FieldError("mismatched fields in substitution")
            if isinstance(v, FieldElem) and not v.field.is_rational:
                if field.is_rational:
                    field = v.field
                elif v.field is not field:
                    raise FieldError("mismatched fields in substitution")
        for name in assignment:
            if name not in self.vars:
                raise ValueError("unknown variable %r" % name)
        base = self.lift(field) if field is not self.field else self
        subs = {}
        for name, v in assignment.items():
            if isinstance(v, MPoly):
                subs[name] = v.lift(field) if v.field is not field else v
            else:
                if not isinstance(v, FieldElem):
                    v = field.elem_from_rational(v)
                elif v.field is not field:
                    v = field.elem_from_rational(v.vec[0])
                subs[name] = MPoly.const(field, base.vars, v)
        # make every substituted polynomial live on our variable list
        for name, p in list(subs.items()):
            if p.vars != base.vars:
                conv = MPoly(field, base.vars)
                for e, c in p.terms.items():
                    ne = [0] * len(base.vars)
                    for i, v in enumerate(p.vars):
                        if e[i]:
                            ne[base.vars.index(v)] = e[i]
                    conv.terms[tuple(ne)] = c
                subs[name] = conv
        out = MPoly.zero(field, base.vars)
        powcache = {}

        def power_of(name, k):
            key = (name, k)
            if key not in powcache:
                powcache[key] = subs[name] ** k
            return powcache[key]

        for e, c in base.terms.items():
            term = MPoly.const(field, base.vars, c)
            for i, v in enumerate(base.vars):
                if e[i] == 0:
                    continue
                if v in subs:
                    term = term * power_of(v, e[i])
                else:
                    term = term * MPoly.var(field, base.vars, v, e[i])
            out = out + term
        return out

    def eval_point(self, values):
        """total evaluation at a point given as {var: FieldElem}"""
        r = self.subst(values)
        if r.degree() > 0:
            raise ValueError("evaluation left free variables")
        return r.constant()

    def diff(self, name):
        if name not in self.vars:
            raise ValueError("unknown variable %r" % name)
        i = self.vars.index(name)
        out = MPoly(self.field, self.vars)
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out.terms[tuple(ne)] = c * e[i]
        return out

    def as_univariate(self, name):
        """coefficient list (low degree first) in one variable; entries are
        MPolys in the remaining variables"""
        i = self.vars.index(name)
        rest = tuple(v for j, v in enumerate(self.vars) if j != i)
        d = self.degree_in(name)
        out = [MPoly.zero(self.field, rest) for _ in range(max(d + 1, 1))]
        for e, c in self.terms.items():
            re = tuple(e[j] for j in range(len(e)) if j != i)
            out[e[i]].terms[re] = out[e[i]].terms.get(re, self.field.zero()) + c
        for p in out:
            p.terms = {e: c for e, c in p.terms.items() if not c.is_zero()}
        while len(out) > 1 and out[-1].is_zero():
            out.pop()
        return out

    def univariate_coeffs(self, name):
        """coefficient list in one variable when no other variable occurs;
        entries are FieldElems"""
        lst = self.as_univariate(name)
        out = []
        for p in lst:
            if p.degree() > 0:
                raise ValueError("polynomial is not univariate in %s" % name)
            out.append(p.constant())
        return out

    @classmethod
    def from_univariate(cls, field, variables, name, coeffs):
        i = list(variables).index(name)
        out = cls(field, variables)
        for k, c in enumerate(coeffs):
            if isinstance(c, MPoly):
                for e, cc in c.terms.items():
                    ne = [0] * len(variables)
                    for j, v in enumerate(c.vars):
                        ne[list(variables).index(v)] = e[j]
                    ne[i] = k
                    out.terms[tuple(ne)] = cc
            else:
                if not isinstance(c, FieldElem):
                    c = field.elem_from_rational(c)
                if not c.is_zero():
                    ne = [0] * len(variables)
                    ne[i] = k
                    out.terms[tuple(ne)] = c
        out.terms = {e: c for e, c in out.terms.items() if not c.is_zero()}
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join("%s^%d" % (v, k) if k > 1 else v
                            for v, k in zip(self.vars, e) if k)
            bits.append("(%r)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(bits)


def poly_eval_subst(p, assignment):
    """substitute into p; see MPoly.subst"""
    return p.subst(assignment)


def differentiate(p, v):
    """formal partial derivative"""
    return p.diff(v)


def poly_from_dict(field, variables, d):
    return MPoly(field, variables, d)


# ---------------------------------------------------------------------------
# ideal reduction (lex, small fixed ideals)
# ---------------------------------------------------------------------------

class IdealBasis(object):
    """a list of generators with a lex order tag and a Groebner flag.

    Only the small ideals the geometry needs are ever used: a principal ideal
    whose generator's leading monomial is coprime-ish (e.g. z0^2 - z1z2 in
    lex z0 > z1 > ... ), ideals generated by variables, and a linear form.
    For all of those the given generators already are a Groebner basis.
    """

    def __init__(self, gens, order=None, groebner=False):
        if not gens:
            raise ValueError("empty ideal basis")
        self.gens = list(gens)
        self.vars = self.gens[0].vars
        self.order = tuple(order) if order is not None else self.vars
        self.groebner = bool(groebner)
        self._perm = [self.vars.index(v) for v in self.order]

    def _key(self, exp):
        return tuple(exp[i] for i in self._perm)

    def lead(self, p):
        e = max(p.terms, key=self._key)
        return e, p.terms[e]


def reduce_mod(p, I):
    """normal form of p modulo the ideal basis I (lex division algorithm).

    Refuses when the Groebner flag is unset, since the normal form would then
    depend on the generator order.
    """
    if not I.groebner:
        raise ValueError("ideal basis is not flagged as a Groebner basis; "
                         "pre-process it first")
    if p.is_zero():
        return p
    field = p.field
    gens = []
    for g in I.gens:
        g2 = g.lift(field) if g.field is not field else g
        if g2.vars != p.vars:
            raise FieldError("ideal and polynomial on different variables")
        gens.append((I.lead(g2), g2))
    remainder = MPoly.zero(field, p.vars)
    work = p
    while not work.is_zero():
        e = max(work.terms, key=I._key)
        c = work.terms[e]
        for (le, lc), g in gens:
            if all(a >= b for a, b in zip(e, le)):
                q = tuple(a - b for a, b in zip(e, le))
                factor = MPoly(field, p.vars, {q: c / lc})
                work = work - factor * g
                break
        else:
            remainder = remainder + MPoly(field, p.vars, {e: c})
            work = work - MPoly(field, p.vars, {e: c})
    return remainder


# ---------------------------------------------------------------------------
# resultants (subresultant polynomial remainder sequence)
# ---------------------------------------------------------------------------

def _mp_divexact(a, b):
    """exact division of multivariate polynomials (raises if not exact)"""
    if b.is_zero():
        raise ZeroDivisionError("exact division by zero")
    if a.is_zero():
        return a
    field = a.field
    order = a.vars

    def key(e):
        return e
    rem = a
    quot = MPoly.zero(field, a.vars)
    lb = max(b.terms, key=key)
    cb = b.terms[lb]
    while not rem.is_zero():
        la = max(rem.terms, key=key)
        if not all(x >= y for x, y in zip(la, lb)):
            raise ArithmeticError("division is not exact")
        q = tuple(x - y for x, y in zip(la, lb))
        coef = rem.terms[la] / cb
        t = MPoly(field, a.vars, {q: coef})
        quot = quot + t
        rem = rem - t * b
    return quot


def _prem(A, B, field, rest):
    """pseudo-remainder of coefficient lists (entries MPolys), low-first"""
    A = list(A)
    db = len(B) - 1
    lb = B[-1]
    # pseudo-remainder: lb^(da-db+1) * A mod B, built step by step
    e = (len(A) - 1) - db + 1
    while len(A) - 1 >= db and A:
        da = len(A) - 1
        # A <- lb*A - lc(A)*x^(da-db)*B  (classical pseudo-division step)
        top = A[-1]
        A = [c * lb for c in A]
        e -= 1
        shift = da - db
        for i in range(db + 1):
            A[shift + i] = A[shift + i] - top * B[i]
        while A and A[-1].is_zero():
            A.pop()
        if not A:
            break
    for _ in range(max(e, 0)):
        A = [c * lb for c in A]
    return A


def resultant(p, q, v):
    """Res_v(p, q) by a subresultant polynomial remainder sequence.

    The result is a polynomial in the remaining variables (a constant MPoly
    when p and q are univariate).
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("resultant of two zero polynomials")
    field = p.field
    if q.field is not field:
        if q.field.is_rational:
            q = q.lift(field)
        elif field.is_rational:
            p = p.lift(q.field)
            field = q.field
        else:
            raise FieldError("resultant over mixed fields")
    A = p.as_univariate(v)
    B = q.as_univariate(v)
    rest = tuple(x for x in p.vars if x != v)
    one = MPoly.const(field, rest, 1)
    zero = MPoly.zero(field, rest)

    def trim(L):
        L = list(L)
        while L and L[-1].is_zero():
            L.pop()
        return L

    A, B = trim(A), trim(B)
    da, db = len(A) - 1, len(B) - 1
    if da < 0 or db < 0:
        return zero
    sign = 1
    if da < db:
        A, B, da, db = B, A, db, da
        if (da * db) % 2 == 1:
            sign = -sign
    if db == 0:
        if da == 0:
            return one
        out = B[0] ** da
        return out * sign if sign < 0 else out
    g = one
    h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if (da % 2 == 1) and (db % 2 == 1):
            sign = -sign
        R = _prem(A, B, field, rest)
        if not R:
            return zero
        denom = g
        for _ in range(delta):
            denom = denom * h
        A = B
        B = [_mp_divexact(c, denom) for c in R]
        g = A[-1]
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            h = g
        else:
            # h <- g^delta / h^(delta-1), exact in the subresultant PRS
            num = g
            for _ in range(delta - 1):
                num = num * g
            den = h
            for _ in range(delta - 2):
                den = den * h
            h = _mp_divexact(num, den)
        if len(B) - 1 == 0:
            da = len(A) - 1
            # res = h^(1-da) * lc(B)^da  (exact)
            num = B[0] ** da
            den = one
            for _ in range(da - 1):
                den = den * h
            out = _mp_divexact(num, den)
            return out * sign if sign < 0 else out


# ---------------------------------------------------------------------------
# univariate arithmetic over a number field (FieldElem coefficient lists)
# ---------------------------------------------------------------------------

def fe_trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def fe_divmod(a, b):
    if not b:
        raise ZeroDivisionError
    field = b[-1].field
    a = list(a)
    q = [field.zero()] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = q[k] + c
        for i, y in enumerate(b):
            a[k + i] = a[k + i] - c * y
        fe_trim(a)
        if not a:
            break
    return q, a


def fe_gcd_monic(a, b):
    """monic gcd of univariate polynomials over a number field"""
    a, b = fe_trim(list(a)), fe_trim(list(b))
    while b:
        a, b = b, fe_divmod(a, b)[1]
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def fe_eval(coeffs, x):
    field = x.field
    v = field.zero()
    for c in reversed(coeffs):
        v = v * x + (c if isinstance(c, FieldElem) else
                     field.elem_from_rational(c))
    return v


# ---------------------------------------------------------------------------
# roots of binary forms of degree <= 4
# ---------------------------------------------------------------------------

class Root(object):
    """a projective root [x:y] of a binary form.

    Explicit roots have size 1 and exact FieldElem coordinates; an irreducible
    factor of degree 3 or 4 is kept as one class of size = degree whose
    coordinates use the primary root t of Q[t]/(factor).  conj_pairs counts
    the complex-conjugate pairs inside the class; partner indexes the
    conjugate Root when conjugation is expressible.
    """

    def __init__(self, field, x, y, mult, size=1, real_count=None,
                 partner=None, minpoly=None):
        self.field = field
        self.x = x
        self.y = y
        self.mult = mult
        self.size = size
        self.real_count = real_count
        self.partner = partner
        self.minpoly = minpoly

    @property
    def conj_pairs(self):
        if self.real_count is None:
            return None
        return (self.size - self.real_count) // 2

    def __repr__(self):
        return "Root[%r : %r] (mult %d, size %d)" % (self.x, self.y,
                                                     self.mult, self.size)


def binary_form_roots(b):
    """projective roots, with multiplicity, of a rational binary form of
    degree <= 4 in its two variables.

    Degree-1 factors give rational points; degree-2 factors give a pair of
    explicit conjugate roots in Q[t]/(m); degree-3/4 factors give one class
    per factor with the Sturm real-root count recorded.
    """
    if b.is_zero():
        raise ValueError("zero binary form")
    if len(b.vars) != 2:
        raise ValueError("binary form needs exactly two variables")
    if not b.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    if not b.field.is_rational:
        raise FieldError("binary_form_roots expects rational coefficients")
    d = b.degree()
    if d > 4:
        raise DegreeError("binary forms stop at degree 4 by design")
    xv, yv = b.vars
    # powers of x and y dividing the form
    min_x = min(e[0] for e in b.terms)
    min_y = min(e[1] for e in b.terms)
    roots = []
    if min_x:
        roots.append(Root(QQ, QQ.elem_from_rational(0),
                          QQ.elem_from_rational(1), min_x, 1, 1))
    if min_y:
        roots.append(Root(QQ, QQ.elem_from_rational(1),
                          QQ.elem_from_rational(0), min_y, 1, 1))
    # dehomogenize: p(x) = b(x, 1) after stripping monomial content
    coeffs = [Fraction(0)] * (d - min_x - min_y + 1)
    for e, c in b.terms.items():
        coeffs[e[0] - min_x] = c.vec[0]
    coeffs = _uv_trim(coeffs)
    if len(coeffs) > 1:
        _content, factors = _factor_univariate(coeffs)
        for fc, mult in factors:
            deg = len(fc) - 1
            if deg == 1:
                val = -fc[0]
                roots.append(Root(QQ, QQ.elem_from_rational(val),
                                  QQ.elem_from_rational(1), mult, 1, 1))
            elif deg == 2:
                disc = fc[1] ** 2 - 4 * fc[0]
                if disc < 0:
                    conj = ([-fc[1], Fraction(-1)])  # t -> -c1 - t
                else:
                    conj = ([Fraction(0), Fraction(1)])  # real roots: identity
                K = NumberField(fc[:2], conj_image=conj)
                t = K.gen()
                r1 = Root(K, t, K.one(), mult, 1,
                          1 if disc > 0 else 0, minpoly=tuple(fc))
                other = K.elem_from_rational(-fc[1]) - t
                r2 = Root(K, other, K.one(), mult, 1,
                          1 if disc > 0 else 0, minpoly=tuple(fc))
                if disc < 0:
                    r1.partner = r2
                    r2.partner = r1
                roots.append(r1)
                roots.append(r2)
            else:
                K = NumberField(fc[:-1])
                rc = sturm_real_roots(fc)
                roots.append(Root(K, K.gen(), K.one(), mult, deg, rc,
                                  minpoly=tuple(fc)))
    total = sum(r.mult * r.size for r in roots)
    assert total == d, "root multiplicities must sum to the degree"
    return roots


def reexpand_roots(b, roots):
    """product of the (homogenized) minimal polynomials of the root classes,
    for the re-expansion invariant; equal to b up to a rational constant."""
    xv, yv = b.vars
    out = MPoly.const(QQ, b.vars, 1)
    x = MPoly.var(QQ, b.vars, xv)
    y = MPoly.var(QQ, b.vars, yv)
    seen_pair = set()
    for r in roots:
        if r.field.is_rational:
            if r.y.is_zero():
                lin = y
            else:
                lin = x - r.x.rational_value() * y
            out = out * lin ** r.mult
        elif r.size == 1:
            # conjugate pair sharing one quadratic factor: emit it once
            key = (r.minpoly, r.mult)
            if key in seen_pair:
                continue
            seen_pair.add(key)
            m = r.minpoly
            quad = x * x + m[1] * x * y + m[0] * (y * y)
            out = out * quad ** r.mult
        else:
            m = list(r.minpoly)  # already monic: leading 1 included
            h = MPoly.zero(QQ, b.vars)
            d = len(m) - 1
            for i, c in enumerate(m):
                h = h + c * x ** i * y ** (d - i)
            out = out * h ** r.mult
    return out


# ---------------------------------------------------------------------------
# zero-dimensional solving
# ---------------------------------------------------------------------------

class Solution(object):
    """one solution class of a zero-dimensional system.

    coords maps variable names to FieldElems in `field`; when the field has
    degree > 1 the class stands for all degree-many conjugate solutions.
    """

    def __init__(self, field, coords, multiplicity=1):
        self.field = field
        self.coords = coords
        self.multiplicity = multiplicity

    @property
    def size(self):
        return self.field.degree

    def __repr__(self):
        return "Solution(%r, mult %d)" % (self.coords, self.multiplicity)


class ResidualFactor(object):
    """certificate for solutions living beyond the degree-4 cap: the
    irreducible eliminant factor and the variable it eliminates."""

    def __init__(self, var, coeffs, context=""):
        self.var = var
        self.coeffs = tuple(coeffs)
        self.context = context

    def __repr__(self):
        return "ResidualFactor(%s, deg %d)" % (self.var, len(self.coeffs) - 1)


class SolveResult(object):
    def __init__(self, solutions, residuals):
        self.solutions = solutions
        self.residuals = residuals


def _factor_mpoly_q(p):
    """irreducible factors (over Q) of a rational MPoly, via sympy"""
    import sympy

    syms = {v: sympy.Symbol(v) for v in p.vars}
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        cc = c.vec[0]
        term = sympy.Rational(cc.numerator, cc.denominator)
        for v, k in zip(p.vars, e):
            if k:
                term *= syms[v] ** k
        expr += term
    _content, factors = sympy.factor_list(
        sympy.Poly(expr, *[syms[v] for v in p.vars]))
    out = []
    for fac, mult in factors:
        fp = MPoly.zero(QQ, p.vars)
        pd = fac.as_dict()
        for exp, coef in pd.items():
            fp.terms[tuple(int(x) for x in exp)] = QQ.elem_from_rational(
                Fraction(str(coef)))
        out.append((fp, mult))
    return out


def _pairwise_eliminate(system, v):
    """one elimination step: pairwise subresultant resultants w.r.t. v"""
    with_v = [p for p in system if p.degree_in(v) > 0]
    without = [p.as_univariate(v)[0] for p in system if p.degree_in(v) <= 0
               and not p.is_zero()]
    out = list(without)
    degenerate = True
    if len(with_v) == 1:
        # v only constrained by one equation: nothing to eliminate pairwise
        return out, True
    for i in range(len(with_v)):
        for j in range(i + 1, len(with_v)):
            r = resultant(with_v[i], with_v[j], v)
            if not r.is_zero():
                out.append(r)
                degenerate = False
    return out, degenerate or bool(without)


def _candidates_bivariate(system, outer, inner):
    """complete candidate factor list for the outer variable of a bivariate
    system, via factored pairwise resultants.

    Factors every eliminant over Q and collects, for each factor-disjoint
    pair of eliminants, the irreducible factors of the factor-pairwise
    resultants (the pair's product has the same zero set as the full
    resultant).  The outer coordinate of any common zero shows up in the
    candidate set of every disjoint pair, so intersecting a few of those
    sets soundly prunes the spurious factors a single resultant drags in.
    """
    polys = [p for p in system if not p.is_zero()]
    if not polys:
        raise DimensionError("empty system is positive-dimensional")

    def canon_key(g):
        # candidates are univariate in the outer variable, but may carry
        # different variable tuples depending on which route produced
        # them; key on the monic univariate coefficient vector so the
        # same factor is never branched twice
        cs = [c.rational_value() for c in g.univariate_coeffs(outer)]
        lead = cs[-1]
        return tuple(c / lead for c in cs)

    outer_only = []
    factor_sets = []
    for p in polys:
        if p.degree_in(inner) <= 0:
            outer_only.append(p)
        else:
            factor_sets.append([f for f, _m in _factor_mpoly_q(p)
                                if f.degree() > 0])
    candidates = {}

    def add_factor(f, mult):
        for g, m in _factor_mpoly_q(f):
            if g.degree_in(outer) > 0:
                key = canon_key(g)
                if key not in candidates:
                    candidates[key] = (g, m * mult)

    if outer_only:
        # the outer variable is already cut out directly
        for p in outer_only:
            add_factor(p, 1)
        return [v for v in candidates.values()]
    if len(factor_sets) == 1:
        raise DimensionError("single bivariate equation is "
                             "positive-dimensional", factor_sets[0])
    disjoint = []
    for i in range(len(factor_sets)):
        for j in range(i + 1, len(factor_sets)):
            fi = {frozenset(f.terms.items()) for f in factor_sets[i]}
            fj = {frozenset(f.terms.items()) for f in factor_sets[j]}
            if not fi & fj:
                disjoint.append((i, j))
    if not disjoint:
        raise DimensionError("all eliminant pairs share a factor "
                             "(positive-dimensional locus)",
                             factor_sets[0])

    def pair_candidates(i, j):
        found = {}
        for f0 in factor_sets[i]:
            for f1 in factor_sets[j]:
                d0, d1 = f0.degree_in(inner), f1.degree_in(inner)
                if d0 == 0 and d1 == 0:
                    continue
                if d0 == 0:
                    r = f0
                elif d1 == 0:
                    r = f1
                else:
                    r = resultant(f0, f1, inner)
                if r.is_zero() or r.degree_in(outer) <= 0:
                    continue
                for g, m in _factor_mpoly_q(r):
                    if g.degree_in(outer) > 0:
                        key = canon_key(g)
                        if key not in found:
                            found[key] = (g, m)
        return found

    first = pair_candidates(*disjoint[0])
    keep = set(first)
    for pair in disjoint[1:3]:
        keep &= set(pair_candidates(*pair))
        if not keep:
            break
    for key in first:
        if key in keep:
            candidates[key] = first[key]
    return [v for v in candidates.values()]


def _extend_with_factor(fc):
    """fresh field for a monic irreducible rational factor (low-first)"""
    deg = len(fc) - 1
    if deg == 1:
        return QQ, QQ.elem_from_rational(-fc[0])
    if deg == 2:
        disc = fc[1] ** 2 - 4 * fc[0]
        conj = [-fc[1], Fraction(-1)] if disc < 0 else [Fraction(0),
                                                        Fraction(1)]
        K = NumberField(fc[:2], conj_image=conj)
        return K, K.gen()
    K = NumberField(fc[:-1])
    return K, K.gen()


def _gcd_chain_over(polys_fe):
    acc = None
    for c in polys_fe:
        c = fe_trim(list(c))
        if not c:
            continue
        acc = c if acc is None else fe_gcd_monic(acc, c)
        if len(acc) == 1:
            return acc
    return acc


def solve_zero_dim(system, order=None, degree_cap=4):
    """solve a zero-dimensional polynomial system in <= 3 variables exactly.

    Returns a SolveResult whose solutions live in number fields of degree
    <= degree_cap; candidate branches that would need a larger extension are
    reported as ResidualFactor certificates.  Raises DimensionError when the
    elimination detects a positive-dimensional solution set.
    """
    system = [p for p in system]
    if not system:
        raise ValueError("empty system")
    variables = system[0].vars
    if len(variables) > 3:
        raise ValueError("solver is limited to 3 variables")
    for p in system:
        if p.vars != variables:
            raise FieldError("system polynomials on different variables")
        if not p.field.is_rational:
            raise FieldError("solver expects rational input")
    order = list(order) if order else list(variables)
    nontriv = [p for p in system if not p.is_zero()]
    if not nontriv:
        raise DimensionError("all equations vanish identically")

    residuals = []
    solutions = []

    def finish_branch(field, coords, mult, remaining):
        """coords fixed for all but `remaining` (ordered) variables"""
        if not remaining:
            # total verification: every equation at the full point
            vals = {v: coords[v] for v in variables}
            ok = all(p.eval_point(vals).is_zero() for p in system)
            if ok:
                solutions.append(Solution(field, dict(coords), mult))
            return
        v = remaining[0]
        # substitute what we have, then eliminate the later variables over
        # the current field to get univariate constraints in v
        work = []
        for p in nontriv:
            q = p.subst(coords) if coords else p
            if not q.is_zero():
                work.append(q)
        if not work:
            raise DimensionError("all equations vanish at a partial "
                                 "solution (positive-dimensional)")
        for w in reversed(remaining[1:]):
            nxt, _deg = _pairwise_eliminate(work, w)
            work = [p for p in nxt if not p.is_zero()]
            if not work:
                raise DimensionError("elimination of %s left nothing "
                                     "(positive-dimensional)" % w)
        use = [p.univariate_coeffs(v) for p in work]
        if not use:
            raise DimensionError("no constraint left for %s "
                                 "(positive-dimensional)" % v)
        g = _gcd_chain_over(use)
        if g is None:
            raise DimensionError("all constraints vanish for %s at a partial "
                                 "solution (positive-dimensional)" % v)
        if len(g) == 1:
            return  # inconsistent branch: no solution here
        if len(g) == 2:
            val = -g[0] / g[1]
            nc = dict(coords)
            nc[v] = val
            finish_branch(field, nc, mult, remaining[1:])
            return
        # gcd of degree >= 2
        if field.is_rational:
            rat = [c.rational_value() for c in g]
            _content, factors = _factor_univariate(rat)
            for fc, fm in factors:
                deg = len(fc) - 1
                if deg > degree_cap:
                    residuals.append(ResidualFactor(v, fc, "over Q"))
                    continue
                K, root = _extend_with_factor(fc)
                nc = {k: (K.elem_from_rational(val.rational_value())
                          if K is not QQ else val)
                      for k, val in coords.items()}
                nc[v] = root
                finish_branch(K, nc, mult * fm, remaining[1:])
            return
        # already in an extension: rebuild the branch over an absolute
        # field when the total degree stays within the cap, by eliminating
        # the old generator with a resultant
        d1 = field.degree
        YV = ('_gen', '_val')
        mfull = [Fraction(c) for c in field.minpoly] + [Fraction(1)]
        mY = MPoly(QQ, YV, {(i, 0): c for i, c in enumerate(mfull) if c})
        gterms = {}
        for j, ce in enumerate(g):
            for i, a in enumerate(ce.vec):
                if a:
                    gterms[(i, j)] = a
        GYv = MPoly(QQ, YV, gterms)
        R = resultant(mY, GYv, '_gen')
        rc = [c.rational_value() for c in R.univariate_coeffs('_val')]
        while rc and rc[-1] == 0:
            rc.pop()
        if len(rc) <= 1:
            raise DimensionError("degenerate elimination of a relative "
                                 "extension branch")
        lead = rc[-1]
        rc = [c / lead for c in rc]
        _content2, afactors = _factor_univariate(rc)
        for fc, fm in afactors:
            deg = len(fc) - 1
            if deg == 1:
                # a rational value of v; as an element of a field it is a
                # root of g iff it is a root for every conjugate of the
                # generator, so the branch keeps its field
                t0 = field.elem_from_rational(-fc[0])
                acc = field.zero()
                vp = field.one()
                for ce in g:
                    acc = acc + vp * ce
                    vp = vp * t0
                if acc.is_zero():
                    nc = dict(coords)
                    nc[v] = t0
                    finish_branch(field, nc, mult, remaining[1:])
                continue
            if deg > degree_cap:
                residuals.append(ResidualFactor(v, fc, "absolute norm"))
                continue
            L, root = _extend_with_factor(fc)
            # locate the old generator inside L: it is the common root of
            # the old minimal polynomial and the gcd polynomial at v = root
            vpow = L.one()
            coeffY = {}
            for j in range(len(g)):
                for i in range(d1):
                    a = g[j].vec[i]
                    if a:
                        coeffY[i] = coeffY.get(i, L.zero()) + vpow * a
                vpow = vpow * root
            gY = [coeffY.get(i, L.zero()) for i in range(d1 + 1)]
            mL = [L.elem_from_rational(c) for c in mfull]
            h = fe_gcd_monic(fe_trim(mL), fe_trim(gY))
            if len(h) == 2:
                y0 = -h[0]
                ypows = [L.one()]
                for _ in range(d1 - 1):
                    ypows.append(ypows[-1] * y0)
                nc = {}
                for k, val in coords.items():
                    acc = L.zero()
                    for i, a in enumerate(val.vec):
                        if a:
                            acc = acc + ypows[i] * a
                    nc[k] = acc
                nc[v] = root
                finish_branch(L, nc, mult * fm, remaining[1:])
            elif len(h) > 2:
                residuals.append(ResidualFactor(
                    v, [c.vec for c in h],
                    "unseparated relative branch"))
            # gcd 1: spurious resultant factor, no solution on this branch

    def descend(sys_now, vars_left, mult):
        """eliminate down to one variable, then back-substitute"""
        if len(vars_left) == 1:
            v = vars_left[0]
            chains = []
            for p in sys_now:
                if p.is_zero():
                    continue
                chains.append([c.constant() if isinstance(c, MPoly) else c
                               for c in p.as_univariate(v)])
            g = _gcd_chain_over(chains)
            if g is None:
                raise DimensionError("univariate stage is degenerate")
            if len(g) == 1:
                return []
            rat = [c.rational_value() for c in g]
            _content, factors = _factor_univariate(rat)
            out = []
            for fc, fm in factors:
                deg = len(fc) - 1
                if deg > degree_cap:
                    residuals.append(ResidualFactor(v, fc, "univariate"))
                    continue
                K, root = _extend_with_factor(fc)
                out.append((K, {v: root}, mult * fm))
            return out
        if len(vars_left) == 2:
            outer, inner = vars_left
            cands = _candidates_bivariate(sys_now, outer, inner)
            out = []
            for f, fm in cands:
                rat = f.univariate_coeffs(outer)
                rr = [c.rational_value() for c in rat]
                lead = rr[-1]
                rr = [c / lead for c in rr]
                deg = len(rr) - 1
                if deg > degree_cap:
                    residuals.append(ResidualFactor(outer, rr, "bivariate"))
                    continue
                K, root = _extend_with_factor(rr)
                out.append((K, {outer: root}, mult * fm))
            return out
        # three variables: eliminate the last one pairwise, recurse
        v = vars_left[-1]
        reduced, degenerate = _pairwise_eliminate(sys_now, v)
        reduced = [p for p in reduced if not p.is_zero()]
        if not reduced:
            raise DimensionError("elimination of %s left no equations "
                                 "(positive-dimensional)" % v)
        return descend(reduced, vars_left[:-1], mult)

    elim_order = list(order)
    partials = descend(nontriv, elim_order, 1)
    for field, coords, mult in partials:
        fixed = set(coords)
        remaining = [v for v in elim_order if v not in fixed]
        finish_branch(field, coords, mult, remaining)
    # collapse identical classes reached through different branch routes
    unique = {}
    for s in solutions:
        mp = None if s.field.minpoly is None else tuple(s.field.minpoly)
        key = (mp, tuple(sorted((v, tuple(e.vec))
                                for v, e in s.coords.items())))
        if key not in unique:
            unique[key] = s
    return SolveResult(list(unique.values()), residuals)


# ---------------------------------------------------------------------------
# exact linear algebra over Q
# ---------------------------------------------------------------------------

def rref(rows, ncols=None):
    """reduced row echelon form over Q; returns (rref_rows, pivot_columns)"""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    mat = [[_frac(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def kernel_basis(rows, ncols):
    """basis of the right kernel of the matrix over Q"""
    mat, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -mat[r][fc]
        basis.append(v)
    return basis


def solve_linear(rows, rhs):
    """solve A x = b over Q; returns (particular solution, kernel basis) or
    None when inconsistent"""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = mat[r][ncols]
    return x, kernel_basis(rows, ncols)
