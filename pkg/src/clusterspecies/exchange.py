"""Skew-symmetrizable integer exchange matrices and their mutation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class NotSkewSymmetrizable(ValueError):
    pass


@dataclass(frozen=True)
class ExchangeMatrix:
    labels: tuple
    rows: tuple  # tuple of tuples of int, rows[i][j] = b_ij

    def __post_init__(self):
        n = len(self.labels)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("exchange matrix must be square over its labels")
        if any(self.rows[i][i] != 0 for i in range(n)):
            raise ValueError("exchange matrix must have zero diagonal")

    @property
    def n(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(label)

    def entry(self, i_label, j_label):
        return self.rows[self.index(i_label)][self.index(j_label)]

    def to_json(self):
        return {"labels": list(self.labels), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["labels"]), tuple(tuple(r) for r in data["rows"]))

    @classmethod
    def from_rows(cls, rows, labels=None):
        rows = [list(r) for r in rows]
        if labels is None:
            labels = list(range(1, len(rows) + 1))
        return cls(tuple(labels), tuple(tuple(r) for r in rows))


def find_skew_symmetrizer(b: ExchangeMatrix) -> tuple[int, ...]:
    """Minimal positive integer d with b_ij d_j = -b_ji d_i.

    Componentwise minimal: each connected component is scaled so that its
    entries are integers with gcd 1.  Raises NotSkewSymmetrizable when the
    sign pattern or a cycle constraint rules every positive solution out.
    """
    n = b.n
    rows = b.rows
    for i in range(n):
        for j in range(n):
            if (rows[i][j] == 0) != (rows[j][i] == 0) or rows[i][j] * rows[j][i] > 0:
                raise NotSkewSymmetrizable(f"sign pattern violation at ({b.labels[i]}, {b.labels[j]})")
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        comp = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                # b_ij d_j = -b_ji d_i  =>  d_j = -b_ji/b_ij * d_i
                val = Fraction(-rows[j][i], rows[i][j]) * d[i]
                if val <= 0:
                    raise NotSkewSymmetrizable("negative ratio in symmetrizer propagation")
                if d[j] is None:
                    d[j] = val
                    comp.append(j)
                    stack.append(j)
                elif d[j] != val:
                    raise NotSkewSymmetrizable("inconsistent cycle in symmetrizer constraints")
        mult = lcm(*[d[i].denominator for i in comp]) if comp else 1
        vals = [d[i] * mult for i in comp]
        g = 0
        for v in vals:
            g = gcd(g, v.numerator)
        for i, v in zip(comp, vals):
            d[i] = v / g
    return tuple(int(x) for x in d)


def is_skew_symmetrizable(b: ExchangeMatrix) -> bool:
    try:
        find_skew_symmetrizer(b)
        return True
    except NotSkewSymmetrizable:
        return False


def mutate_matrix(b: ExchangeMatrix, k) -> ExchangeMatrix:
    """Matrix mutation at vertex k (a label)."""
    ki = b.index(k)
    n = b.n
    old = b.rows
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == ki or j == ki:
                row.append(-old[i][j])
            else:
                row.append(old[i][j] + (old[i][ki] * abs(old[ki][j]) + abs(old[i][ki]) * old[ki][j]) // 2)
        new.append(tuple(row))
    return ExchangeMatrix(b.labels, tuple(new))
