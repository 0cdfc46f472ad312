"""Sylvester-determinant resultant, used as an independent oracle in tests.

Deliberately naive: build the full Sylvester matrix of two polynomials in the
chosen variable (entries are polynomials in the remaining variables) and take
its determinant with sympy.  Nothing here is shared with the library's
subresultant implementation.
"""

import sympy as sp


def sylvester_resultant(p, q, v):
    p = sp.Poly(p, v)
    q = sp.Poly(q, v)
    m = p.degree()
    n = q.degree()
    if m <= 0 and n <= 0:
        raise ValueError("need positive degree in %s" % v)
    pc = p.all_coeffs()
    qc = q.all_coeffs()
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return sp.expand(sp.Matrix(rows).det(method="berkowitz"))
