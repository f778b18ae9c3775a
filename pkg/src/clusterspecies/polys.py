"""Integer multivariate polynomials, subtraction-free rationals, tropical arithmetic.

IntPolynomial is a dense-exponent sparse-term polynomial over a declared,
ordered variable tuple.  SFRational keeps a numerator/denominator pair with
nonnegative coefficients in canonical form (content and polynomial gcd
removed), which is what makes involution checks plain structural equality.
"""

from __future__ import annotations

from math import gcd as int_gcd


class IntPolynomial:
    """Polynomial with integer coefficients over an ordered variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        nv = len(self.vars)
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nv:
                    raise ValueError(f"exponent arity {len(exp)} != {nv}")
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponent in polynomial")
                c = int(coeff)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): int(c)})

    @classmethod
    def one(cls, variables):
        return cls.constant(variables, 1)

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        exp = [0] * len(variables)
        exp[i] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def monomial(cls, variables, exp, coeff=1):
        return cls(variables, {tuple(exp): int(coeff)})

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * len(self.vars): 1}

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def is_nonnegative(self):
        return all(c > 0 for c in self.terms.values())

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
            if not t[e]:
                del t[e]
        return IntPolynomial(self.vars, t)

    def __neg__(self):
        return IntPolynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
                if not t[e]:
                    del t[e]
        return IntPolynomial(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPolynomial.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k)
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)

    # -- structure ----------------------------------------------------

    def lex_leading(self):
        """(exponent, coeff) of the lexicographically largest monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def divisibility_max_monomial(self):
        """The exponent dominating all others componentwise, or None."""
        if not self.terms:
            return None
        top = tuple(max(e[i] for e in self.terms) for i in range(len(self.vars)))
        return top if top in self.terms else None

    def content(self):
        g = 0
        for c in self.terms.values():
            g = int_gcd(g, abs(c))
        return g

    def exact_div(self, other):
        """Quotient self / other over Z, or None when the division is not exact."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self.terms)
        le, lc = other.lex_leading()
        q = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, le))
            if any(x < 0 for x in qe) or c % lc:
                return None
            qc = c // lc
            q[qe] = qc
            for oe, oc in other.terms.items():
                ne = tuple(a + b for a, b in zip(qe, oe))
                rem[ne] = rem.get(ne, 0) - qc * oc
                if not rem[ne]:
                    del rem[ne]
        return IntPolynomial(self.vars, q)

    def substitute(self, images, target_vars):
        """Ring morphism sending each variable to images[name] (IntPolynomial)."""
        target_vars = tuple(target_vars)
        out = IntPolynomial.zero(target_vars)
        for e, c in self.terms.items():
            term = IntPolynomial.constant(target_vars, c)
            for name, k in zip(self.vars, e):
                if k:
                    term = term * images[name] ** k
            out = out + term
        return out

    def tropical_eval(self, images):
        """Evaluate in the min-plus semifield.

        images[name] is an integer exponent vector; monomials map to linear
        combinations, + takes the componentwise minimum.  Requires nonnegative
        coefficients and a nonempty polynomial.
        """
        if not self.terms:
            raise ValueError("tropical evaluation of zero")
        if not self.is_nonnegative():
            raise NotSubtractionFree("negative coefficient in tropical evaluation")
        width = len(next(iter(images.values()))) if images else 0
        best = None
        for e in self.terms:
            v = [0] * width
            for name, k in zip(self.vars, e):
                if k:
                    img = images[name]
                    for i in range(width):
                        v[i] += k * img[i]
            best = v if best is None else [min(a, b) for a, b in zip(best, v)]
        return tuple(best)

    def to_json(self):
        return [{"coeff": c, "exp": list(e)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, variables, data):
        return cls(variables, {tuple(t["exp"]): t["coeff"] for t in data})


class NotSubtractionFree(ValueError):
    pass


# -- polynomial gcd over Z ---------------------------------------------------


def _split_by_var(p: IntPolynomial, vi: int):
    """View p as a univariate polynomial in variable index vi.

    Returns dict degree -> IntPolynomial coefficient (with exponent vi zeroed).
    """
    coeffs: dict[int, dict] = {}
    for e, c in p.terms.items():
        d = e[vi]
        e0 = e[:vi] + (0,) + e[vi + 1:]
        coeffs.setdefault(d, {})[e0] = c
    return {d: IntPolynomial(p.vars, t) for d, t in coeffs.items()}


def _join_by_var(coeffs, vi: int, variables):
    t = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            ne = e[:vi] + (d,) + e[vi + 1:]
            t[ne] = c
    return IntPolynomial(variables, t)


def _var_degree(p: IntPolynomial, vi: int):
    return max((e[vi] for e in p.terms), default=0)


def _content_in_var(p: IntPolynomial, vi: int):
    parts = _split_by_var(p, vi)
    g = IntPolynomial.zero(p.vars)
    for poly in parts.values():
        g = poly_gcd(g, poly)
        if g.is_one():
            break
    return g


def _pseudo_rem(a: IntPolynomial, b: IntPolynomial, vi: int):
    """Pseudo-remainder of a by b as univariate polynomials in variable vi."""
    da, db = _var_degree(a, vi), _var_degree(b, vi)
    if da < db:
        return a
    bs = _split_by_var(b, vi)
    lb = bs[db]
    r = a
    variables = a.vars
    while not r.is_zero() and _var_degree(r, vi) >= db:
        dr = _var_degree(r, vi)
        rs = _split_by_var(r, vi)
        lr = rs[dr]
        shift = [0] * len(variables)
        shift[vi] = dr - db
        mono = IntPolynomial.monomial(variables, shift)
        r = r * lb - b * (lr * mono)
    return r


def _normalize_sign(p: IntPolynomial):
    if p.is_zero():
        return p
    _, lc = p.lex_leading()
    return -p if lc < 0 else p


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[vars], sign-normalized."""
    if a.vars != b.vars:
        raise ValueError("variable mismatch in gcd")
    if a.is_zero():
        return _normalize_sign(b)
    if b.is_zero():
        return _normalize_sign(a)
    used = [i for i in range(len(a.vars)) if _var_degree(a, i) or _var_degree(b, i)]
    if not used:
        return IntPolynomial.constant(a.vars, int_gcd(a.constant_term(), b.constant_term()))
    vi = used[0]
    if _var_degree(a, vi) == 0 or _var_degree(b, vi) == 0:
        # one side is free of vi: gcd divides that side's vi-content
        free, other = (a, b) if _var_degree(a, vi) == 0 else (b, a)
        return poly_gcd(free, _content_in_var(other, vi))
    ca, cb = _content_in_var(a, vi), _content_in_var(b, vi)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    if _var_degree(pa, vi) < _var_degree(pb, vi):
        pa, pb = pb, pa
    while True:
        r = _pseudo_rem(pa, pb, vi)
        if r.is_zero():
            g = pb
            break
        if _var_degree(r, vi) == 0:
            g = IntPolynomial.one(a.vars)
            break
        pa, pb = pb, r.exact_div(_content_in_var(r, vi))
    g = g.exact_div(_content_in_var(g, vi)) if not g.is_one() else g
    return _normalize_sign(g * poly_gcd(ca, cb))


# -- subtraction-free rationals ----------------------------------------------


class SFRational:
    """Quotient of subtraction-free integer polynomials in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntPolynomial, den: IntPolynomial, reduce: bool = True):
        if num.vars != den.vars:
            raise ValueError("variable mismatch in SFRational")
        if den.is_zero():
            raise ZeroDivisionError("SFRational with zero denominator")
        if reduce:
            num, den = _reduce_pair(num, den)
        if not (num.is_nonnegative() or num.is_zero()) or not den.is_nonnegative():
            raise NotSubtractionFree("SFRational with negative coefficients")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: IntPolynomial):
        return cls(p, IntPolynomial.one(p.vars), reduce=False)

    @classmethod
    def one(cls, variables):
        return cls.from_poly(IntPolynomial.one(variables))

    @classmethod
    def variable(cls, variables, name):
        return cls.from_poly(IntPolynomial.variable(variables, name))

    @property
    def vars(self):
        return self.num.vars

    def is_polynomial(self):
        return self.den.is_one()

    def as_polynomial(self):
        if not self.den.is_one():
            raise NonPolynomialResult(f"denominator {self.den!r} does not reduce to 1")
        return self.num

    def __mul__(self, other):
        if isinstance(other, IntPolynomial):
            other = SFRational.from_poly(other)
        return SFRational(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if isinstance(other, IntPolynomial):
            other = SFRational.from_poly(other)
        if other.num.is_zero():
            raise ZeroDivisionError
        return SFRational(self.num * other.den, self.den * other.num)

    def __add__(self, other):
        if isinstance(other, IntPolynomial):
            other = SFRational.from_poly(other)
        return SFRational(self.num * other.den + other.num * self.den, self.den * other.den)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return SFRational(self.den, self.num, reduce=False)

    def __pow__(self, n):
        if n == 0:
            return SFRational.one(self.vars)
        if n < 0:
            return self.inverse() ** (-n)
        return SFRational(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        return (
            isinstance(other, SFRational)
            and self.vars == other.vars
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"

    def substitute(self, images, target_vars):
        """Semifield morphism; images maps each variable to an SFRational."""
        if self.num.is_zero():
            return SFRational.from_poly(IntPolynomial.zero(target_vars))
        out = None
        for e, c in self.num.terms.items():
            term = SFRational.from_poly(IntPolynomial.constant(target_vars, c))
            for name, k in zip(self.vars, e):
                if k:
                    term = term * images[name] ** k
            out = term if out is None else out + term
        dout = None
        for e, c in self.den.terms.items():
            term = SFRational.from_poly(IntPolynomial.constant(target_vars, c))
            for name, k in zip(self.vars, e):
                if k:
                    term = term * images[name] ** k
            dout = term if dout is None else dout + term
        return out / dout

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, variables, data):
        return cls(
            IntPolynomial.from_json(variables, data["num"]),
            IntPolynomial.from_json(variables, data["den"]),
        )


class NonPolynomialResult(ValueError):
    pass


def _reduce_pair(num: IntPolynomial, den: IntPolynomial):
    if num.is_zero():
        return num, IntPolynomial.one(num.vars)
    g = poly_gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    if den.terms and all(c < 0 for c in den.terms.values()):
        num, den = -num, -den
    return num, den


# -- specialization (character variables to vertex variables) ----------------


def specialize_poly(p: IntPolynomial, var_map: dict, target_vars) -> IntPolynomial:
    """Apply the variable collapse name -> var_map[name], summing exponents."""
    target_vars = tuple(target_vars)
    idx = {v: i for i, v in enumerate(target_vars)}
    t = {}
    for e, c in p.terms.items():
        ne = [0] * len(target_vars)
        for name, k in zip(p.vars, e):
            if k:
                ne[idx[var_map[name]]] += k
        ne = tuple(ne)
        t[ne] = t.get(ne, 0) + c
        if not t[ne]:
            del t[ne]
    return IntPolynomial(target_vars, t)


def specialize_sf(r: SFRational, var_map: dict, target_vars) -> SFRational:
    return SFRational(
        specialize_poly(r.num, var_map, target_vars),
        specialize_poly(r.den, var_map, target_vars),
    )


class TropicalElement:
    """Element of the tropical semifield: an integer exponent vector.

    Multiplication adds exponent vectors; addition takes the componentwise
    minimum.
    """

    __slots__ = ("vars", "exponent")

    def __init__(self, variables, exponent):
        self.vars = tuple(variables)
        self.exponent = tuple(int(e) for e in exponent)
        if len(self.exponent) != len(self.vars):
            raise ValueError("exponent arity mismatch")

    def __mul__(self, other):
        return TropicalElement(self.vars, tuple(a + b for a, b in zip(self.exponent, other.exponent)))

    def __add__(self, other):
        return TropicalElement(self.vars, tuple(min(a, b) for a, b in zip(self.exponent, other.exponent)))

    def __pow__(self, n):
        return TropicalElement(self.vars, tuple(a * int(n) for a in self.exponent))

    def __eq__(self, other):
        return isinstance(other, TropicalElement) and self.vars == other.vars and self.exponent == other.exponent

    def __repr__(self):
        return f"Trop{self.exponent}"
