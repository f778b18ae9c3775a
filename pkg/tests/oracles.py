"""Independent oracles used by the test suite.

These deliberately avoid the package's own code paths: the F-polynomial /
g-vector oracle runs plain seed mutation with principal coefficients in
sympy, and the cyclic-derivative oracle evaluates the group-summed formula
literally with exact cyclotomic character values.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from clusterspecies.paths import TruncatedElement


def fz_principal_fg(rows, seq, k):
    """(F-polynomial terms, g-vector) from principal-coefficient seed mutation.

    Mutates the seed along seq in order and reads vertex k.  Returns
    (dict exponent-tuple -> int over the y-variables, tuple g).
    """
    n = len(rows)
    xs = sympy.symbols(f"x1:{n + 1}", positive=True)
    ys = sympy.symbols(f"y1:{n + 1}", positive=True)
    b = [list(r) for r in rows]
    c = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cluster = list(xs)
    for step in seq:
        t = step - 1
        pos = sympy.Integer(1)
        neg = sympy.Integer(1)
        for i in range(n):
            if b[i][t] > 0:
                pos *= cluster[i] ** b[i][t]
            elif b[i][t] < 0:
                neg *= cluster[i] ** (-b[i][t])
            if c[i][t] > 0:
                pos *= ys[i] ** c[i][t]
            elif c[i][t] < 0:
                neg *= ys[i] ** (-c[i][t])
        cluster[t] = sympy.cancel((pos + neg) / cluster[t])
        nb = [[0] * n for _ in range(n)]
        nc = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == t or j == t:
                    nb[i][j] = -b[i][j]
                else:
                    nb[i][j] = b[i][j] + (b[i][t] * abs(b[t][j]) + abs(b[i][t]) * b[t][j]) // 2
                nc[i][j] = -c[i][j] if j == t else c[i][j] + (c[i][t] * abs(b[t][j]) + abs(c[i][t]) * b[t][j]) // 2
        b, c = nb, nc
    x = sympy.cancel(cluster[k - 1])
    num, den = sympy.fraction(sympy.together(x))
    den_poly = sympy.Poly(den, *xs, *ys)
    if len(den_poly.terms()) != 1:
        raise AssertionError("cluster variable denominator is not a monomial")
    den_exp, den_coeff = den_poly.terms()[0]
    assert den_coeff == 1
    fpoly = {}
    gvec = None
    for exp, coeff in sympy.Poly(sympy.expand(num), *xs, *ys).terms():
        xexp = tuple(e - d for e, d in zip(exp[:n], den_exp[:n]))
        yexp = tuple(e - d for e, d in zip(exp[n:], den_exp[n:]))
        assert all(e >= 0 for e in yexp)
        fpoly[yexp] = fpoly.get(yexp, 0) + int(coeff)
        if all(e == 0 for e in yexp):
            assert gvec is None, "two y-free monomials"
            gvec = xexp
            assert coeff == 1
    assert gvec is not None, "no y-free monomial: constant term of F is not 1"
    return fpoly, gvec


def fz_coefficient_free_variable(rows, seq, k):
    """Laurent polynomial of the coefficient-free cluster variable at vertex k."""
    n = len(rows)
    xs = sympy.symbols(f"x1:{n + 1}", positive=True)
    b = [list(r) for r in rows]
    cluster = list(xs)
    for step in seq:
        t = step - 1
        pos = sympy.Integer(1)
        neg = sympy.Integer(1)
        for i in range(n):
            if b[i][t] > 0:
                pos *= cluster[i] ** b[i][t]
            elif b[i][t] < 0:
                neg *= cluster[i] ** (-b[i][t])
        cluster[t] = sympy.cancel((pos + neg) / cluster[t])
        nb = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == t or j == t:
                    nb[i][j] = -b[i][j]
                else:
                    nb[i][j] = b[i][j] + (b[i][t] * abs(b[t][j]) + abs(b[i][t]) * b[t][j]) // 2
        b = nb
    x = sympy.cancel(cluster[k - 1])
    num, den = sympy.fraction(sympy.together(x))
    den_poly = sympy.Poly(den, *xs)
    (den_exp, den_coeff), = den_poly.terms()
    assert den_coeff == 1
    out = {}
    for exp, coeff in sympy.Poly(sympy.expand(num), *xs).terms():
        key = tuple(e - d for e, d in zip(exp, den_exp))
        out[key] = out.get(key, 0) + int(coeff)
    return out


# -- group-basis cyclic derivative ---------------------------------------------


class Cyc12:
    """Exact arithmetic in Q(zeta_12), as polynomials modulo x^4 - x^2 + 1."""

    __slots__ = ("c",)

    def __init__(self, coeffs=(0, 0, 0, 0)):
        self.c = tuple(Fraction(x) for x in coeffs)

    @classmethod
    def zeta_power(cls, e: int) -> "Cyc12":
        e %= 12
        out = cls((1, 0, 0, 0))
        unit = cls((0, 1, 0, 0))
        for _ in range(e):
            out = out * unit
        return out

    def __add__(self, other):
        return Cyc12(tuple(a + b for a, b in zip(self.c, other.c)))

    def __mul__(self, other):
        raw = [Fraction(0)] * 7
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        raw[i + j] += a * b
        # reduce modulo x^4 = x^2 - 1
        for deg in range(6, 3, -1):
            if raw[deg]:
                raw[deg - 2] += raw[deg]
                raw[deg - 4] -= raw[deg]
                raw[deg] = Fraction(0)
        return Cyc12(tuple(raw[:4]))

    def scale(self, q):
        return Cyc12(tuple(Fraction(q) * a for a in self.c))

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def rational_value(self) -> Fraction:
        assert self.is_rational(), f"non-rational cyclotomic {self.c}"
        return self.c[0]


def char_value(group, char, element) -> Cyc12:
    """chi(g) for a character and an element of a product of cyclic groups."""
    e = 0
    for d, c, g in zip(group.cyclic_factors, char, element):
        e += (12 // d) * c * g
    return Cyc12.zeta_power(e)


def group_basis_cyclic_derivative(species, arrow, potential) -> TruncatedElement:
    """The group-summed derivative formula, evaluated literally.

    For each occurrence of the arrow in a cyclic term, sums over all pairs of
    group elements at the arrow's endpoints, with exact cyclotomic character
    values; the result must come out rational, and is returned as a truncated
    element for comparison with the character-basis implementation.
    """
    src_group = species.group(arrow.source.vertex)
    tgt_group = species.group(arrow.target.vertex)
    acc = {}
    for path, coeff in potential.terms.items():
        ln = len(path)
        for pos, arr in enumerate(path):
            if arr != arrow:
                continue
            nxt = path[(pos + 1) % ln]
            prv = path[(pos - 1) % ln]
            tail = path[pos + 1:] + path[:pos]
            total = Cyc12()
            for g in src_group.elements():
                for h in tgt_group.elements():
                    ginv = tuple((-x) % d for x, d in zip(g, src_group.cyclic_factors))
                    hinv = tuple((-x) % d for x, d in zip(h, tgt_group.cyclic_factors))
                    # xi(g^{-1} a h) = rho(g^{-1}) sigma(h)
                    val = char_value(src_group, arrow.source.char, ginv) * char_value(tgt_group, arrow.target.char, h)
                    # h^{-1} (tail) g = chi_next(h^{-1}) chi_prev(g) (tail)
                    val = val * char_value(tgt_group, nxt.source.char, hinv)
                    val = val * char_value(src_group, prv.target.char, g)
                    total = total + val
            q = total.rational_value() * coeff
            if q:
                acc[tail] = acc.get(tail, Fraction(0)) + q
    out = TruncatedElement.zero(max(potential.N - 1, 0))
    out.terms = {p: c for p, c in acc.items() if c}
    return out
