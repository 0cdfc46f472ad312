"""Independent brute-force elimination oracle.

Two jobs, both done with plain sympy resultant chains and linear solves,
sharing no code with the library:

* ``oracle_point_certificates``: for each pair of double curves, the monic
  polynomial whose roots are the values of a fixed projective-invariant
  linear functional at the intersection points.  Comparing these
  polynomials against the same certificates computed from the library's
  point coordinates is an exact multiset comparison of the point sets.

* ``oracle_chart_jacobian``: the solution classes of
  g = dg/ds = dg/dt = dg/du = 0 for the affine chart restriction g of the
  quartic, found by substituting the separating form, eliminating by
  resultants, and verifying every candidate factor by exact back
  substitution in the quotient field.
"""

import sympy as sp

Z = sp.symbols('z0 z1 z2 z3 z4')
X = sp.Symbol('X')
W_DEFAULT = (3, 5, 7, 11, 13)
V_DEFAULT = (1, 2, 3, 4, 5)

# separating form for chart solutions: s + 17 t + 89 u
LAM = (1, 17, 89)


def _forms(f_coeffs, q_coeffs):
    f = sum(sp.Rational(c) * z for c, z in zip(f_coeffs, Z))
    # coefficient order z0^2, z0z1, ..., z0z4, z1^2, z1z2, ..., z4^2
    order = [(i, j) for i in range(5) for j in range(i, 5)]
    q = sum(sp.Rational(c) * Z[i] * Z[j] for c, (i, j) in zip(q_coeffs, order))
    g = Z[0]**2 - Z[1] * Z[2]
    return f, q, g


# (pair) -> (coordinates set to zero, extra equation tags)
_GROUPS = {
    (1, 2): ((0, 1, 2), ()),
    (1, 3): ((0, 1, 3), ()),
    (1, 4): ((0, 1, 4), ()),
    (1, 5): ((0, 1), ('f',)),
    (2, 3): ((0, 2, 3), ()),
    (2, 4): ((0, 2, 4), ()),
    (2, 5): ((0, 2), ('f',)),
    (3, 4): ((3, 4), ('g',)),
    (3, 5): ((3,), ('f', 'g')),
    (4, 5): ((4,), ('f', 'g')),
}

_GROUP_SIZE = {(1, 2): 2, (1, 3): 2, (1, 4): 2, (1, 5): 2, (2, 3): 2,
               (2, 4): 2, (2, 5): 2, (3, 4): 4, (3, 5): 4, (4, 5): 4}


def oracle_point_certificates(f_coeffs, q_coeffs, w=W_DEFAULT, v=V_DEFAULT):
    """dict (i,j) -> monic sympy Poly in X of degree = #points, whose roots are
    (w.z)/(v.z) over the intersection points of curves i and j."""
    f, q, g = _forms(f_coeffs, q_coeffs)
    out = {}
    for pair, (zeros, extras) in _GROUPS.items():
        subs0 = {Z[k]: 0 for k in zeros}
        unknowns = [Z[k] for k in range(5) if k not in zeros]
        eqs_lin = [sum(sp.Rational(c) * z for c, z in zip(v, Z)) - 1,
                   X - sum(sp.Rational(c) * z for c, z in zip(w, Z))]
        eqs_other = [q]
        if 'f' in extras:
            eqs_lin.append(f)
        if 'g' in extras:
            eqs_other.append(g)
        eqs_lin = [sp.expand(e.subs(subs0)) for e in eqs_lin]
        eqs_other = [sp.expand(e.subs(subs0)) for e in eqs_other]
        sol = sp.solve(eqs_lin, unknowns, dict=True)
        if len(sol) != 1:
            raise ValueError("degenerate linear part for pair %s" % (pair,))
        sol = sol[0]
        solved = set(sol)
        rest = [u for u in unknowns if u not in solved]
        eqs = [sp.together(e.subs(sol)) for e in eqs_other]
        eqs = [sp.expand(sp.numer(sp.cancel(e))) for e in eqs]
        if len(rest) == 0:
            assert len(eqs) == 1
            elim = eqs[0]
        elif len(rest) == 1:
            assert len(eqs) == 2
            elim = sp.resultant(eqs[0], eqs[1], rest[0])
        else:
            raise ValueError("unexpected shape for pair %s" % (pair,))
        poly = sp.Poly(sp.expand(elim), X)
        if poly.degree() != _GROUP_SIZE[pair]:
            raise ValueError("chart degeneration for pair %s (degree %s)"
                             % (pair, poly.degree()))
        out[pair] = poly.monic()
    return out


# ---------------------------------------------------------------------------
# chart Jacobian solutions
# ---------------------------------------------------------------------------

_y = sp.Symbol('_y')          # generator of the quotient field
_s, _t, _u = sp.symbols('_s _t _u')


def _red(expr, h):
    """reduce an expression polynomial in _y modulo the minimal polynomial h."""
    return sp.rem(sp.Poly(sp.expand(expr), _y), h).as_expr()


def _gcd_mod(a, b, h, var):
    """monic gcd of two polynomials in var with coefficients in Q[_y]/(h)."""
    if not isinstance(a, sp.Poly):
        a = sp.Poly(sp.expand(a), var)
    if not isinstance(b, sp.Poly):
        b = sp.Poly(sp.expand(b), var)

    def reduce_poly(p):
        return sp.Poly([_red(c, h) for c in p.all_coeffs()], var)

    a, b = reduce_poly(a), reduce_poly(b)
    while not b.is_zero:
        lc = sp.Poly(b.all_coeffs()[0], _y)
        inv = sp.invert(lc, h).as_expr()
        bm = sp.Poly([_red(c * inv, h) for c in b.all_coeffs()], var)
        r = sp.rem(a, bm)
        r = sp.Poly([_red(c, h) for c in r.all_coeffs()], var) \
            if not r.is_zero else r
        a, b = bm, r
    lc = sp.Poly(a.all_coeffs()[0], _y)
    inv = sp.invert(lc, h).as_expr()
    return sp.Poly([_red(c * inv, h) for c in a.all_coeffs()], var)


def chart_poly(f_coeffs, q_coeffs, chart):
    """affine restriction g(s,t,u) of the quartic to one of the two scroll
    charts (chart 1: [s:1:s^2:t:u], chart 2: [s:s^2:1:t:u])."""
    f, q, g0 = _forms(f_coeffs, q_coeffs)
    quartic = Z[0] * Z[3] * Z[4] * f - q**2
    if chart == 1:
        subs = {Z[0]: _s, Z[1]: 1, Z[2]: _s**2, Z[3]: _t, Z[4]: _u}
    else:
        subs = {Z[0]: _s, Z[1]: _s**2, Z[2]: 1, Z[3]: _t, Z[4]: _u}
    return sp.expand(quartic.subs(subs))


def _factors(expr, var):
    out = []
    for fac, _m in sp.factor_list(sp.Poly(sp.expand(expr), var))[1]:
        if fac.degree() > 0:
            out.append(fac.monic())
    return out


def oracle_chart_jacobian(f_coeffs, q_coeffs, chart):
    """Solve {g = g_s = g_t = g_u = 0} by brute resultant elimination.

    Returns a list of classes (m, s_expr, t_expr, u_expr): m a monic
    irreducible sympy Poly in _y, the coordinates polynomials in _y reduced
    mod m; each class stands for all deg(m) conjugate solutions.  The class
    field is always a simple extension for the specs this oracle is run on.
    """
    g = chart_poly(f_coeffs, q_coeffs, chart)
    system = [g, sp.diff(g, _s), sp.diff(g, _t), sp.diff(g, _u)]
    # eliminate u pairwise and factor the bivariate eliminants over Q
    biv_factors = []
    for i in range(len(system)):
        for j in range(i + 1, len(system)):
            r = sp.resultant(system[i], system[j], _u)
            if r != 0:
                fl = sp.factor_list(sp.Poly(sp.expand(r), _s, _t))[1]
                biv_factors.append([f for f, _m in fl if f.total_degree() > 0])
    # pick a pair of eliminants with no common factor; its resultant is then
    # the product of the factor-pairwise resultants, so collecting those gives
    # a complete s-candidate set
    chosen = None
    for i in range(len(biv_factors)):
        for j in range(i + 1, len(biv_factors)):
            if not set(biv_factors[i]) & set(biv_factors[j]):
                chosen = (i, j)
                break
        if chosen:
            break
    if chosen is None:
        raise ValueError("oracle elimination degenerated")
    candidates = set()
    for f0 in biv_factors[chosen[0]]:
        for f1 in biv_factors[chosen[1]]:
            d0, d1 = f0.degree(_t), f1.degree(_t)
            if d0 == 0:
                r = f0.as_expr()
            elif d1 == 0:
                r = f1.as_expr()
            else:
                r = sp.resultant(f0.as_expr(), f1.as_expr(), _t)
            if r == 0 or not r.free_symbols:
                continue
            # every isolated solution of these systems lies in an extension of
            # degree at most 4, so larger spurious factors can be dropped
            for ms in _factors(r, _s):
                if ms.degree() <= 4:
                    candidates.add(ms)
    classes = []
    for ms in sorted(candidates, key=lambda p: (p.degree(), str(p))):
        my = sp.Poly(ms.as_expr().subs(_s, _y), _y)
        if my.degree() == 1:
            s_val = sp.Rational(-my.all_coeffs()[1])
            classes.extend(_solve_tu(system, s_val, None))
        else:
            classes.extend(_solve_tu(system, _y, my))
    return classes


def _gcd_chain(polys, var, modulus):
    acc = None
    for p in polys:
        if modulus is not None:
            p = sp.Poly([_red(c, modulus) for c in p.all_coeffs()], var)
        if p.is_zero:
            continue
        if acc is None:
            acc = p
        elif modulus is None:
            acc = sp.gcd(acc, p)
            acc = sp.Poly(acc, var)
        else:
            acc = _gcd_mod(acc, p, modulus, var)
        if acc.degree() == 0:
            return acc
    return acc


def _solve_tu(system, s_val, modulus):
    """back-substitute s and solve the remaining (t, u) system; modulus is the
    minimal polynomial of _y when s_val involves _y, else None."""
    classes = []
    spec = [sp.expand(e.subs(_s, s_val)) for e in system]
    # eliminate u over the current field
    t_polys = []
    for i in range(len(spec)):
        for j in range(i + 1, len(spec)):
            r = sp.resultant(spec[i], spec[j], _u)
            if modulus is not None:
                r = _red(r, modulus) if not r.free_symbols - {_y} else \
                    sp.Poly([_red(c, modulus) for c in
                             sp.Poly(r, _t).all_coeffs()], _t).as_expr()
            if r != 0:
                t_polys.append(sp.Poly(sp.expand(r), _t))
    gt = _gcd_chain(t_polys, _t, modulus)
    if gt is None or gt.degree() == 0:
        return []
    t_options = []   # (t_val, modulus after possible extension)
    if gt.degree() == 1:
        if modulus is None:
            t_options.append((sp.Rational(-gt.all_coeffs()[1]), None))
        else:
            t_options.append((_red(-gt.all_coeffs()[1], modulus), modulus))
    elif modulus is None:
        for fac in _factors(gt.as_expr(), _t):
            fy = sp.Poly(fac.as_expr().subs(_t, _y), _y)
            if fy.degree() == 1:
                t_options.append((sp.Rational(-fy.all_coeffs()[1]), None))
            else:
                t_options.append((_y, fy))
    else:
        return []  # nested extension: not needed for the oracle's fixed specs
    for t_val, mod2 in t_options:
        u_polys = []
        for e in spec:
            p = sp.expand(e.subs(_t, t_val))
            if mod2 is not None:
                p = sp.Poly([_red(c, mod2) for c in
                             sp.Poly(p, _u).all_coeffs()], _u)
            else:
                p = sp.Poly(p, _u)
            if not p.is_zero:
                u_polys.append(p)
        gu = _gcd_chain(u_polys, _u, mod2)
        if gu is None or gu.degree() == 0:
            continue
        u_options = []
        if gu.degree() == 1:
            if mod2 is None:
                u_options.append((sp.Rational(-gu.all_coeffs()[1]), None))
            else:
                u_options.append((_red(-gu.all_coeffs()[1], mod2), mod2))
        elif mod2 is None:
            for fac in _factors(gu.as_expr(), _u):
                fy = sp.Poly(fac.as_expr().subs(_u, _y), _y)
                if fy.degree() == 1:
                    u_options.append((sp.Rational(-fy.all_coeffs()[1]), None))
                else:
                    u_options.append((_y, fy))
        else:
            continue
        s_out = s_val
        for u_val, mod3 in u_options:
            ok = True
            for e in system:
                val = sp.expand(e.subs({_s: s_out, _t: t_val, _u: u_val}))
                if mod3 is not None:
                    val = _red(val, mod3)
                if val != 0:
                    ok = False
                    break
            if ok:
                m_final = mod3 if mod3 is not None else sp.Poly(_y, _y)
                classes.append((m_final, sp.expand(s_out), sp.expand(t_val),
                                sp.expand(u_val)))
    return classes


def class_lambda_charpoly(m, s_val, t_val, u_val):
    """monic char-poly certificate in X of s + 17 t + 89 u over one class."""
    lam = sp.expand(LAM[0] * s_val + LAM[1] * t_val + LAM[2] * u_val)
    if m.degree() <= 1:
        val = sp.Rational(lam if not lam.free_symbols else
                          lam.subs(_y, -sp.Poly(m, _y).all_coeffs()[-1]))
        return sp.Poly(X - val, X)
    res = sp.resultant(m.as_expr(), X - lam, _y)
    return sp.Poly(sp.expand(res), X).monic()
