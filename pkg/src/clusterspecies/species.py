"""Group species in the character basis.

Vertices carry finite abelian groups; since the base field is algebraically
closed of characteristic zero, every group algebra splits into
one-dimensional characters and every bimodule is determined by the
multiplicity matrix of its character pairs.  All species data here is that
bookkeeping: no field elements are ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm

from .exchange import ExchangeMatrix, NotSkewSymmetrizable, find_skew_symmetrizer


class NotLocallyFree(ValueError):
    pass


class VertexMismatch(ValueError):
    pass


class SymmetrizerMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    cyclic_factors: tuple  # product of Z/d, all d >= 1; trivial group = ()

    def __post_init__(self):
        fac = tuple(int(d) for d in self.cyclic_factors if int(d) != 1)
        if any(d < 1 for d in fac):
            raise ValueError("cyclic factors must be >= 1")
        object.__setattr__(self, "cyclic_factors", fac)

    @property
    def order(self) -> int:
        o = 1
        for d in self.cyclic_factors:
            o *= d
        return o

    def characters(self) -> list[tuple]:
        """All irreducible characters, as residue tuples in lexicographic order."""
        return [tuple(c) for c in product(*(range(d) for d in self.cyclic_factors))]

    def invert_character(self, char: tuple) -> tuple:
        return tuple((-c) % d for c, d in zip(char, self.cyclic_factors))

    def elements(self) -> list[tuple]:
        return self.characters()  # same index set for an abelian group


def char_key(char: tuple) -> str:
    return ".".join(str(c) for c in char) if char else "0"


@dataclass(frozen=True, order=True)
class CharacterIndex:
    vertex: object
    char: tuple

    def key(self) -> str:
        return f"{self.vertex}:{char_key(self.char)}"

    def __repr__(self):
        return self.key()


@dataclass(frozen=True)
class Bimodule:
    """Character multiplicity matrix of a bimodule between two group vertices.

    mult[r][c] is the multiplicity of (rho_r ⊠ sigma_c) where rho_r runs over
    the source vertex's characters and sigma_c over the target's, both in
    canonical order.
    """

    source: object
    target: object
    source_group: FiniteAbelianGroup
    target_group: FiniteAbelianGroup
    mult: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.mult)
        rows = self.source_group.order
        cols = self.target_group.order
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ValueError("multiplicity matrix shape mismatch")
        if any(x < 0 for r in m for x in r):
            raise ValueError("negative multiplicity")
        object.__setattr__(self, "mult", m)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.mult for x in r)

    def dim(self) -> int:
        return sum(x for r in self.mult for x in r)

    def row_sums(self):
        return tuple(sum(r) for r in self.mult)

    def col_sums(self):
        return tuple(sum(r[c] for r in self.mult) for c in range(len(self.mult[0]))) if self.mult else ()


def dual_bimodule(m: Bimodule) -> Bimodule:
    """Linear dual: a (target, source)-bimodule with the transposed multiplicities.

    With the algebra (not contragredient) bimodule structure on Hom(M, K),
    the dual of rho ⊠ sigma is sigma ⊠ rho, so no character inversion occurs;
    this is what makes the canonical pairings land in matching blocks.
    """
    rows = m.target_group.order
    cols = m.source_group.order
    t = [[m.mult[c][r] for c in range(cols)] for r in range(rows)]
    return Bimodule(m.target, m.source, m.target_group, m.source_group, tuple(tuple(r) for r in t))


def opposite_bimodule(m: Bimodule) -> Bimodule:
    """Opposite bimodule: transpose with characters inverted on both sides."""
    schars = m.source_group.characters()
    tchars = m.target_group.characters()
    sidx = {c: i for i, c in enumerate(schars)}
    tidx = {c: i for i, c in enumerate(tchars)}
    t = [[0] * m.source_group.order for _ in range(m.target_group.order)]
    for r, rho in enumerate(schars):
        for c, sig in enumerate(tchars):
            if m.mult[r][c]:
                t[tidx[m.target_group.invert_character(sig)]][sidx[m.source_group.invert_character(rho)]] += m.mult[r][c]
    return Bimodule(m.target, m.source, m.target_group, m.source_group, tuple(tuple(r) for r in t))


def tensor_bimodule(m: Bimodule, n: Bimodule) -> Bimodule:
    if m.target != n.source:
        raise VertexMismatch(f"cannot tensor {m.source}->{m.target} with {n.source}->{n.target}")
    rows = m.source_group.order
    mid = m.target_group.order
    cols = n.target_group.order
    out = [[0] * cols for _ in range(rows)]
    for r in range(rows):
        for t in range(mid):
            if m.mult[r][t]:
                for c in range(cols):
                    out[r][c] += m.mult[r][t] * n.mult[t][c]
    return Bimodule(m.source, n.target, m.source_group, n.target_group, tuple(tuple(r) for r in out))


def direct_sum_mult(a: Bimodule, b: Bimodule) -> Bimodule:
    if (a.source, a.target) != (b.source, b.target):
        raise VertexMismatch("direct sum of bimodules over different vertex pairs")
    m = tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.mult, b.mult))
    return Bimodule(a.source, a.target, a.source_group, a.target_group, m)


@dataclass(frozen=True)
class GroupSpecies:
    vertices: tuple  # ordered vertex labels
    groups: tuple  # FiniteAbelianGroup per vertex
    bimodules: tuple  # Bimodule per ordered pair, flattened row-major (source-major)

    def __post_init__(self):
        n = len(self.vertices)
        if len(self.groups) != n or len(self.bimodules) != n * n:
            raise ValueError("species component count mismatch")
        for i, s in enumerate(self.vertices):
            for j, t in enumerate(self.vertices):
                bm = self.bimodules[i * n + j]
                if bm.source != s or bm.target != t:
                    raise ValueError("bimodule grid out of order")
                if i == j and not bm.is_zero():
                    raise ValueError("species has a loop")

    @classmethod
    def build(cls, vertices, groups, mults) -> "GroupSpecies":
        """mults: dict (source, target) -> multiplicity rows; absent pairs are zero."""
        vertices = tuple(vertices)
        groups = tuple(FiniteAbelianGroup(tuple(g)) if not isinstance(g, FiniteAbelianGroup) else g for g in groups)
        gidx = dict(zip(vertices, groups))
        grid = []
        for s in vertices:
            for t in vertices:
                m = mults.get((s, t))
                if m is None:
                    m = [[0] * gidx[t].order for _ in range(gidx[s].order)]
                grid.append(Bimodule(s, t, gidx[s], gidx[t], tuple(tuple(r) for r in m)))
        return cls(vertices, groups, tuple(grid))

    def group(self, v) -> FiniteAbelianGroup:
        return self.groups[self.vertices.index(v)]

    def bimodule(self, s, t) -> Bimodule:
        n = len(self.vertices)
        return self.bimodules[self.vertices.index(s) * n + self.vertices.index(t)]

    def char_vertices(self) -> list[CharacterIndex]:
        out = []
        for v, g in zip(self.vertices, self.groups):
            for c in g.characters():
                out.append(CharacterIndex(v, c))
        return out

    def to_json(self):
        return {
            "vertices": [{"id": v, "group": list(g.cyclic_factors)} for v, g in zip(self.vertices, self.groups)],
            "bimodules": [
                {"from": b.source, "to": b.target, "mult": [list(r) for r in b.mult]}
                for b in self.bimodules
                if not b.is_zero()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "GroupSpecies":
        vertices = [v["id"] for v in data["vertices"]]
        groups = [tuple(v["group"]) for v in data["vertices"]]
        mults = {(b["from"], b["to"]): b["mult"] for b in data["bimodules"]}
        return cls.build(vertices, groups, mults)


def is_locally_free(sp: GroupSpecies):
    """(verdict, ranks) where ranks[(s,t)] = (left rank, right rank) of nonzero bimodules."""
    ranks = {}
    ok = True
    for b in sp.bimodules:
        if b.is_zero():
            continue
        rs, cs = b.row_sums(), b.col_sums()
        if len(set(rs)) > 1 or len(set(cs)) > 1:
            ok = False
            continue
        ranks[(b.source, b.target)] = (rs[0], cs[0])
    return ok, ranks if ok else {}


def is_globally_free(sp: GroupSpecies) -> bool:
    for b in sp.bimodules:
        vals = {x for r in b.mult for x in r}
        if len(vals) > 1:
            return False
    return True


def left_rank(b: Bimodule) -> int:
    rs = b.row_sums()
    if not rs:
        return 0
    if len(set(rs)) > 1:
        raise NotLocallyFree(f"bimodule {b.source}->{b.target} is not left free")
    return rs[0]


def right_rank(b: Bimodule) -> int:
    cs = b.col_sums()
    if not cs:
        return 0
    if len(set(cs)) > 1:
        raise NotLocallyFree(f"bimodule {b.source}->{b.target} is not right free")
    return cs[0]


def exchange_matrix(sp: GroupSpecies) -> ExchangeMatrix:
    """b_ij = dim_{E_j} A_ji - dim_{E_j} A_ij^*, left ranks throughout."""
    ok, _ = is_locally_free(sp)
    if not ok:
        raise NotLocallyFree("exchange matrix needs a locally free species")
    n = len(sp.vertices)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(0)
                continue
            a_ji = sp.bimodules[j * n + i]
            a_ij = sp.bimodules[i * n + j]
            # dim_{E_j} of the dual of A_ij is the right rank of A_ij
            row.append(left_rank(a_ji) - right_rank(a_ij))
        rows.append(tuple(row))
    return ExchangeMatrix(sp.vertices, tuple(rows))


def has_class_two_cycle(sp: GroupSpecies) -> bool:
    n = len(sp.vertices)
    for i in range(n):
        for j in range(i + 1, n):
            if not sp.bimodules[i * n + j].is_zero() and not sp.bimodules[j * n + i].is_zero():
                return True
    return False


def species_from_matrix(b: ExchangeMatrix, d=None) -> GroupSpecies:
    """Locally free species realizing b, with cyclic group Z/d_i at vertex i.

    For b_ij > 0 the bimodule from j to i is the group algebra of Z/(d_j b_ij)
    with both vertex groups embedded canonically; the character count is pure
    CRT bookkeeping.
    """
    if d is None:
        d = find_skew_symmetrizer(b)
    d = tuple(int(x) for x in d)
    if len(d) != b.n or any(x < 1 for x in d):
        raise SymmetrizerMismatch("symmetrizer length or positivity mismatch")
    for i in range(b.n):
        for j in range(b.n):
            if b.rows[i][j] * d[j] != -b.rows[j][i] * d[i]:
                raise SymmetrizerMismatch(f"d is not a symmetrizer at ({b.labels[i]}, {b.labels[j]})")
    mults = {}
    for i in range(b.n):
        for j in range(b.n):
            bij = b.rows[i][j]
            if bij <= 0:
                continue
            # bimodule from vertex j to vertex i, the group algebra K[Z/n]
            n_ord = d[j] * bij
            dj, di = d[j], d[i]
            g = gcd(dj, di)
            per = n_ord // lcm(dj, di)
            rows = [[per if (u - v) % g == 0 else 0 for v in range(di)] for u in range(dj)]
            mults[(b.labels[j], b.labels[i])] = rows
    groups = [(x,) if x > 1 else () for x in d]
    return GroupSpecies.build(b.labels, groups, mults)


def globally_free_species_from_matrix(b: ExchangeMatrix, d=None) -> GroupSpecies:
    """Globally free realization, available when d_i | b_ij for all i, j.

    Uses copies of the free bimodule K[Gamma_j] (x) K[Gamma_i] instead of a
    single cyclic group algebra; every multiplicity matrix is constant.
    """
    if d is None:
        d = find_skew_symmetrizer(b)
    d = tuple(int(x) for x in d)
    mults = {}
    for i in range(b.n):
        for j in range(b.n):
            bij = b.rows[i][j]
            if bij <= 0:
                continue
            if bij % d[i]:
                raise SymmetrizerMismatch("matrix is not of diagonal times skew-symmetric form")
            s = bij // d[i]
            mults[(b.labels[j], b.labels[i])] = [[s] * d[i] for _ in range(d[j])]
    groups = [(x,) if x > 1 else () for x in d]
    return GroupSpecies.build(b.labels, groups, mults)


def c3_species() -> GroupSpecies:
    """The worked three-vertex example: trivial, trivial, Z/2 groups."""
    return GroupSpecies.build(
        (1, 2, 3),
        [(), (), (2,)],
        {(1, 2): [[1]], (2, 3): [[1, 1]]},
    )
