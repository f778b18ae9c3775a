"""Y-seeds and the combinatorial recursion for F-polynomials and g-vectors.

The FGState engine tracks, for every initial vertex j, the pair
(F_j, g_j) attached to a mutation sequence, and advances it one prepended
mutation at a time: tropical evaluation recovers the h-vector from the
current F-polynomial, the balanced (z_k+1)-identity transports F to the
mutated seed's variables, and the g-vector follows the integer recursion.
Everything is exact; a state whose transported F fails to be a polynomial
with constant term 1 is rejected loudly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exchange import ExchangeMatrix, mutate_matrix
from .polys import IntPolynomial, NonPolynomialResult, SFRational


def zvar(label) -> str:
    return f"z{label}"


def zvars(labels) -> tuple[str, ...]:
    return tuple(zvar(a) for a in labels)


# -- Y-seeds ------------------------------------------------------------------


@dataclass(frozen=True)
class YSeed:
    matrix: ExchangeMatrix
    variables: tuple  # SFRational per label, in label order

    def __post_init__(self):
        if len(self.variables) != self.matrix.n:
            raise ValueError("Y-seed needs one variable per vertex")

    @classmethod
    def free(cls, matrix: ExchangeMatrix) -> "YSeed":
        ctx = zvars(matrix.labels)
        return cls(matrix, tuple(SFRational.variable(ctx, zvar(a)) for a in matrix.labels))

    def variable(self, label) -> SFRational:
        return self.variables[self.matrix.index(label)]


def y_seed_mutate(seed: YSeed, k) -> YSeed:
    b = seed.matrix
    ki = b.index(k)
    yk = seed.variables[ki]
    one = SFRational.one(yk.vars)
    new_vars = []
    for i, yi in enumerate(seed.variables):
        if i == ki:
            new_vars.append(yk.inverse())
        else:
            bki = b.rows[ki][i]
            val = yi * yk ** max(0, bki) * (one + yk) ** (-bki)
            new_vars.append(val)
    return YSeed(mutate_matrix(b, k), tuple(new_vars))


# -- tropical recovery of the h-vector ---------------------------------------


def tropical_h_from_F(f: IntPolynomial, b: ExchangeMatrix) -> tuple[int, ...]:
    """h-vector from a subtraction-free F-polynomial by min-plus evaluation."""
    n = b.n
    images = {}
    for i, lab in enumerate(b.labels):
        v = [0] * n
        v[i] = -1
        for j in range(n):
            if j != i:
                v[j] += max(0, -b.rows[j][i])
        images[zvar(lab)] = tuple(v)
    return f.tropical_eval(images)


# -- the F/g recursion engine -------------------------------------------------


@dataclass(frozen=True)
class FGState:
    matrix: ExchangeMatrix
    tracked: tuple  # per label in order: (IntPolynomial, tuple g-vector)

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "FGState":
        ctx = zvars(matrix.labels)
        n = matrix.n
        pairs = []
        for j in range(n):
            g = tuple(1 if t == j else 0 for t in range(n))
            pairs.append((IntPolynomial.one(ctx), g))
        return cls(matrix, tuple(pairs))

    def pair(self, label):
        return self.tracked[self.matrix.index(label)]


def _transport_f(f: IntPolynomial, b: ExchangeMatrix, ki: int, hk: int, hk_new: int) -> IntPolynomial:
    """Rewrite F in the variables of the seed mutated at index ki.

    Implements the balanced identity: substitute the inverse Y-seed mutation
    into F, multiply by (z_k+1)^hk, divide by (u_k+1)^hk_new, and demand a
    polynomial.  Denominators stay inside u_k^Z (1+u_k)^Z so only monomial
    and cyclotomic-free exact divisions are ever needed.
    """
    ctx = f.vars
    n = b.n
    brow = b.rows[ki]
    terms = []  # (coeff, exponent list with possibly negative k entry, c)
    for e, coeff in f.terms.items():
        ek = -e[ki] - hk
        c = hk - hk_new
        for i in range(n):
            if i == ki or not e[i]:
                continue
            ek += e[i] * max(0, -brow[i])
            c += e[i] * brow[i]
        exp = list(e)
        exp[ki] = ek
        terms.append((coeff, exp, c))
    cmin = min(c for _, _, c in terms)
    acc: dict[tuple, int] = {}
    for coeff, exp, c in terms:
        m = c - cmin
        # binomial expansion of (1+u_k)^m
        row = [1]
        for _ in range(m):
            row = [1] + [row[t] + row[t + 1] for t in range(len(row) - 1)] + [1]
        for t, binom in enumerate(row):
            ee = list(exp)
            ee[ki] += t
            key = tuple(ee)
            acc[key] = acc.get(key, 0) + coeff * binom
            if not acc[key]:
                del acc[key]
    kmin = min((e[ki] for e in acc), default=0)
    shift = max(0, -kmin)
    shifted = {}
    for e, coeff in acc.items():
        ee = list(e)
        ee[ki] += shift
        shifted[tuple(ee)] = coeff
    poly = IntPolynomial(ctx, shifted)
    if cmin < 0:
        onek = IntPolynomial.one(ctx) + IntPolynomial.variable(ctx, ctx[ki])
        q = poly.exact_div(onek ** (-cmin))
        if q is None:
            raise NonPolynomialResult("transported F-polynomial has a (1+z_k) denominator")
        poly = q
    elif cmin > 0:
        onek = IntPolynomial.one(ctx) + IntPolynomial.variable(ctx, ctx[ki])
        poly = poly * onek ** cmin
    if shift:
        mono = [0] * n
        mono[ki] = shift
        q = poly.exact_div(IntPolynomial.monomial(ctx, mono))
        if q is None:
            raise NonPolynomialResult("transported F-polynomial has a monomial denominator")
        poly = q
    return poly


def fg_mutate(state: FGState, k) -> FGState:
    """Advance every tracked (F, g) pair across one prepended mutation at k."""
    b = state.matrix
    ki = b.index(k)
    new_pairs = []
    for f, g in state.tracked:
        if f.constant_term() != 1:
            raise NonPolynomialResult("tracked F-polynomial lost constant term 1")
        h = tropical_h_from_F(f, b)
        hk = h[ki]
        hk_new = hk - g[ki]
        nf = _transport_f(f, b, ki, hk, hk_new)
        if nf.constant_term() != 1:
            raise NonPolynomialResult("mutated F-polynomial lost constant term 1")
        ng = []
        for i in range(b.n):
            if i == ki:
                ng.append(-g[ki])
            else:
                ng.append(g[i] + max(0, b.rows[i][ki]) * g[ki] - b.rows[i][ki] * hk)
        new_pairs.append((nf, tuple(ng)))
    return FGState(mutate_matrix(b, k), tuple(new_pairs))


def compute_fg_state(b: ExchangeMatrix, seq) -> FGState:
    """Final FGState for the mutation sequence seq = (i_1, ..., i_n)."""
    seq = list(seq)
    inner = b
    for s in seq:
        inner = mutate_matrix(inner, s)
    state = FGState.initial(inner)
    for s in reversed(seq):
        state = fg_mutate(state, s)
    return state


def compute_fg(b: ExchangeMatrix, seq, k):
    """The (F-polynomial, g-vector) pair of vertex k for the sequence seq."""
    return compute_fg_state(b, seq).pair(k)
