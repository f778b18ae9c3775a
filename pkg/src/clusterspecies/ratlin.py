"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction (or int), acting on row vectors:
a map f sends the row vector x to x @ M, so M has shape
(dim source) x (dim target).  Everything here is deterministic; pivot
choices follow the natural left-to-right, top-to-bottom order so that
echelon-based complements are reproducible.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_fraction(m) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[Fraction(0)] * (len(b[0]) if b else 0) for _ in a]
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_eq_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    r = [[Fraction(x) for x in row] for row in m]
    if not r:
        return r, []
    rows, cols = len(r), len(r[0])
    pivots: list[int] = []
    lead = 0
    for col in range(cols):
        piv = None
        for i in range(lead, rows):
            if r[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        r[lead], r[piv] = r[piv], r[lead]
        inv = Fraction(1) / r[lead][col]
        r[lead] = [x * inv for x in r[lead]]
        for i in range(rows):
            if i != lead and r[i][col] != 0:
                c = r[i][col]
                r[i] = [x - c * y for x, y in zip(r[i], r[lead])]
        pivots.append(col)
        lead += 1
        if lead == rows:
            break
    return r, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def row_space(m: Matrix) -> Matrix:
    """Echelon basis of the row space (image of x -> x @ m over all x)."""
    r, piv = rref(m)
    return [r[i] for i in range(len(piv))]


def left_kernel(m: Matrix) -> Matrix:
    """Echelon basis of {x : x @ m = 0} (kernel in row-vector convention)."""
    rows = len(m)
    if rows == 0:
        return []
    r, piv = rref(transpose(m))
    pivset = set(piv)
    basis = []
    for free in range(rows):
        if free in pivset:
            continue
        v = [Fraction(0)] * rows
        v[free] = Fraction(1)
        for k, col in enumerate(piv):
            v[col] = -r[k][free]
        basis.append(v)
    return basis


def solve_left(m: Matrix, targets: Matrix) -> Matrix | None:
    """Solve x @ m = t for each row t of targets; None if any is unsolvable."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    aug = transpose(m)
    for t in targets:
        if len(t) != cols:
            raise ValueError("target width mismatch")
    tt = transpose(targets) if targets else []
    big = [aug[i] + (tt[i] if tt else []) for i in range(cols)] if cols else []
    if not big:
        # m has no columns: x @ m = 0-width vector, take x = 0.
        return [[Fraction(0)] * rows for _ in targets]
    r, piv = rref(big)
    for k, col in enumerate(piv):
        if col >= rows:
            return None
    sols = []
    for j in range(len(targets)):
        x = [Fraction(0)] * rows
        for k, col in enumerate(piv):
            x[col] = r[k][rows + j]
        sols.append(x)
    return sols


def in_row_space(basis: Matrix, v: list[Fraction]) -> bool:
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    return rank(basis) == rank(basis + [v])


def invert(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(m)
    aug = [[Fraction(x) for x in m[i]] + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def coords_in_basis(basis: Matrix, vectors: Matrix) -> Matrix:
    """Coordinates of each vector in the given (independent) row basis."""
    if not vectors:
        return []
    if not basis:
        if any(any(x != 0 for x in v) for v in vectors):
            raise ValueError("vector outside span of empty basis")
        return [[] for _ in vectors]
    sol = solve_left(basis, vectors)
    if sol is None:
        raise ValueError("vector outside span of basis")
    return sol


def extend_to_basis(basis: Matrix, dim: int) -> Matrix:
    """Complete an independent set to a basis of Q^dim with unit vectors.

    Returns only the added vectors, chosen greedily in index order.
    """
    cur = [row[:] for row in basis]
    added = []
    for i in range(dim):
        e = [Fraction(1 if j == i else 0) for j in range(dim)]
        if not in_row_space(cur, e):
            cur.append(e)
            added.append(e)
    return added


def complement_in(big: Matrix, small: Matrix) -> Matrix:
    """Vectors of `big` extending `small` to a basis of span(big).

    `small` must be contained in span(big).  Greedy in row order of big,
    hence deterministic.
    """
    cur = [row[:] for row in small]
    added = []
    for v in big:
        if not in_row_space(cur, v):
            cur.append(v)
            added.append(v)
    return added


def intersect_row_spaces(a: Matrix, b: Matrix) -> Matrix:
    """Echelon basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    n = len(a[0])
    stacked = [row + row for row in a] + [row + [Fraction(0)] * n for row in b]
    r, piv = rref(stacked)
    out = []
    for i, row in enumerate(r):
        if i < len(piv) and piv[i] >= n:
            out.append(row[n:])
    # rows with pivot in the second block encode intersection elements
    res = [v for v in out if any(x != 0 for x in v)]
    return row_space(res) if res else []
