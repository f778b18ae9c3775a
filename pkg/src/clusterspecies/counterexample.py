"""Exhaustive instance check for the six-vertex obstruction matrix.

For the displayed 6x6 exchange matrix no locally free GSP admits a
non-degenerate potential: cancellability after the mutation pairs (3,5) and
(4,5) forces two bimodule isomorphisms, and the combination through vertex 6
forces a doubled summand that no locally free assignment realizes.  This
module enumerates every locally free multiplicity assignment (the constraints
factor through the four composite bimodules, which are enumerated exactly)
and reports the satisfying set, for group scale m in a finite list: an
instance check, not the paper-level general argument.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exchange import ExchangeMatrix
from .species import Bimodule, FiniteAbelianGroup, dual_bimodule

OBSTRUCTION_ROWS = (
    (0, 0, 1, 1, -1, -2),
    (0, 0, -1, -1, 1, 2),
    (-1, 1, 0, 0, 0, 0),
    (-1, 1, 0, 0, 0, 0),
    (1, -1, 0, 0, 0, 0),
    (1, -1, 0, 0, 0, 0),
)


def obstruction_matrix() -> ExchangeMatrix:
    return ExchangeMatrix.from_rows(OBSTRUCTION_ROWS)


def control_matrix() -> ExchangeMatrix:
    rows = tuple(tuple(max(-1, min(1, x)) for x in r) for r in OBSTRUCTION_ROWS)
    return ExchangeMatrix.from_rows(rows)


def mult_matrices(rows: int, cols: int, row_sum: int, col_sum: int):
    """All nonnegative integer matrices with constant row and column sums."""
    if rows * row_sum != cols * col_sum:
        return []

    def rows_gen(width, total):
        if width == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in rows_gen(width - 1, total - first):
                yield (first,) + rest

    candidates = list(rows_gen(cols, row_sum))
    out = []

    def rec(i, acc, colrem):
        if i == rows:
            if all(c == 0 for c in colrem):
                out.append(tuple(acc))
            return
        for cand in candidates:
            if all(c <= r for c, r in zip(cand, colrem)):
                rec(i + 1, acc + [cand], [r - c for c, r in zip(cand, colrem)])

    rec(0, [], [col_sum] * cols)
    return out


def dominates(small: Bimodule, big: Bimodule) -> bool:
    return all(x <= y for rs, rb in zip(small.mult, big.mult) for x, y in zip(rs, rb))


def cancellable(fwd: Bimodule, bwd: Bimodule) -> bool:
    """Whether a potential can cancel the 2-cycles formed by two reverse bundles."""
    return dominates(dual_bimodule(fwd), bwd) or dominates(dual_bimodule(bwd), fwd)


@dataclass
class SearchReport:
    scope_note: str
    m: int
    control: bool
    composite_counts: dict = field(default_factory=dict)
    assignments_total: int = 0
    satisfying: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.satisfying

    def to_json(self):
        return {
            "scope_note": self.scope_note,
            "m": self.m,
            "control": self.control,
            "composite_counts": self.composite_counts,
            "assignments_total": self.assignments_total,
            "satisfying_count": len(self.satisfying),
            "empty": self.empty,
            "trace": self.trace,
        }


SCOPE_NOTE = (
    "Instance-level check for group scales m in the requested list only; "
    "the constraints (cancellability after (3,5), (4,5), and the 3/4/6 "
    "combination) are imposed exactly and factor through the composite "
    "bimodules, which are enumerated exhaustively."
)


def _products(left_list, right_list, lgroup, mgroup, rgroup):
    """Distinct composite multiplicity matrices with achievability counts."""
    out: dict[tuple, int] = {}
    for ml in left_list:
        for mr in right_list:
            rows = len(ml)
            cols = len(mr[0])
            mid = len(mr)
            prod = tuple(
                tuple(sum(ml[r][t] * mr[t][c] for t in range(mid)) for c in range(cols)) for r in range(rows)
            )
            out[prod] = out.get(prod, 0) + 1
    return out


def counterexample_search(m: int = 1, control: bool = False) -> SearchReport:
    """Enumerate locally free assignments for the obstruction (or control) matrix."""
    report = SearchReport(SCOPE_NOTE, m, control)
    if control:
        d = (m,) * 6
    else:
        d = (2 * m, 2 * m, 2 * m, 2 * m, 2 * m, m)
    g = {v: FiniteAbelianGroup((dv,) if dv > 1 else ()) for v, dv in zip(range(1, 7), d)}
    b = control_matrix() if control else obstruction_matrix()

    def ranks(i, j):
        """Left and right rank of the bimodule from i to j (b_{ji} > 0)."""
        left = b.entry(j, i)
        dim = d[i - 1] * left
        right = dim // d[j - 1]
        return left, right

    def mults(i, j):
        lr, rr = ranks(i, j)
        return mult_matrices(g[i].order, g[j].order, lr, rr)

    m23, m31 = mults(2, 3), mults(3, 1)
    m24, m41 = mults(2, 4), mults(4, 1)
    m15, m52 = mults(1, 5), mults(5, 2)
    m16, m62 = mults(1, 6), mults(6, 2)
    report.trace.append(
        f"bimodule choices: A23={len(m23)} A31={len(m31)} A24={len(m24)} A41={len(m41)} "
        f"A15={len(m15)} A52={len(m52)} A16={len(m16)} A62={len(m62)}"
    )
    p_set = _products(m23, m31, g[2], g[3], g[1])
    q_set = _products(m24, m41, g[2], g[4], g[1])
    r_set = _products(m15, m52, g[1], g[5], g[2])
    s_set = _products(m16, m62, g[1], g[6], g[2])
    report.composite_counts = {
        "A23*A31": len(p_set),
        "A24*A41": len(q_set),
        "A15*A52": len(r_set),
        "A16*A62": len(s_set),
    }
    report.assignments_total = (
        sum(p_set.values()) * sum(q_set.values()) * sum(r_set.values()) * sum(s_set.values())
    )

    def bimod(src, tgt, mult):
        return Bimodule(src, tgt, g[src], g[tgt], mult)

    survivors_c1 = 0
    survivors_c2 = 0
    for p_m, r_m in itertools.product(p_set, r_set):
        if cancellable(bimod(2, 1, p_m), bimod(1, 2, r_m)):
            survivors_c1 += 1
    report.trace.append(f"(P,R) pairs passing the (3,5)-cancellability: {survivors_c1} of {len(p_set)*len(r_set)}")
    for p_m, q_m, r_m in itertools.product(p_set, q_set, r_set):
        if not cancellable(bimod(2, 1, p_m), bimod(1, 2, r_m)):
            continue
        if not cancellable(bimod(2, 1, q_m), bimod(1, 2, r_m)):
            continue
        survivors_c2 += 1
        for s_m in s_set:
            combined = tuple(tuple(x + y for x, y in zip(rp, rq)) for rp, rq in zip(p_m, q_m))
            if cancellable(bimod(2, 1, combined), bimod(1, 2, s_m)):
                count = (
                    p_set[p_m] * q_set[q_m] * r_set[r_m] * s_set[s_m]
                )
                report.satisfying.append(
                    {"P": p_m, "Q": q_m, "R": r_m, "S": s_m, "assignments": count}
                )
    report.trace.append(f"(P,Q,R) triples passing both pairwise constraints: {survivors_c2}")
    report.trace.append(
        f"satisfying composite tuples after the 3/4/6 constraint: {len(report.satisfying)}"
    )
    return report
