"""Potentials, cyclic derivatives, E-morphisms, and the trivial/reduced splitting.

A potential is a rational combination of rotation classes of cyclic paths of
length >= 2, truncated at degree N.  The splitting algorithm follows the
classical two-stage scheme: put the degree-2 part into a canonical paired
form by an exact change of arrows, then kill every higher term that still
touches a paired arrow with unitriangular substitutions, each pass strictly
raising the lowest offending degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ratlin
from .paths import (
    Arrow,
    Path,
    TruncatedElement,
    enumerate_paths,
    is_cycle,
    path_ok,
    path_source,
    path_target,
)
from .species import CharacterIndex, GroupSpecies


class NotAGSP(ValueError):
    pass


class EndpointMismatch(ValueError):
    pass


def canonical_rotation(path: Path) -> Path:
    """Lexicographically minimal rotation under the global arrow order."""
    best = None
    for r in range(len(path)):
        cand = path[r:] + path[:r]
        if best is None or tuple(a.name for a in cand) < tuple(a.name for a in best):
            best = cand
    return best


class Potential:
    """Truncated potential: map from canonical cyclic paths to rational coefficients."""

    __slots__ = ("terms", "N")

    def __init__(self, N: int, terms=None):
        self.N = int(N)
        clean: dict[Path, Fraction] = {}
        if terms:
            for path, coeff in terms.items():
                path = tuple(path)
                c = Fraction(coeff)
                if not c or len(path) > self.N:
                    continue
                if len(path) < 2:
                    raise NotAGSP("potential term of degree < 2")
                if not path_ok(path) or not is_cycle(path):
                    raise ValueError(f"potential term is not a cycle: {path}")
                key = canonical_rotation(path)
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self.terms = clean

    @classmethod
    def zero(cls, N):
        return cls(N, {})

    def is_zero(self):
        return not self.terms

    def degree_part(self, d: int) -> dict:
        return {p: c for p, c in self.terms.items() if len(p) == d}

    def min_degree(self):
        return min((len(p) for p in self.terms), default=0)

    def __add__(self, other):
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, Fraction(0)) + c
            if not t[p]:
                del t[p]
        out = Potential(self.N)
        out.terms = t
        return out

    def scale(self, c):
        c = Fraction(c)
        out = Potential(self.N)
        out.terms = {} if not c else {p: x * c for p, x in self.terms.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, Potential) and self.N == other.N and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*" + "".join(f"({a.name})" for a in p)
            for p, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        )

    def arrows_used(self):
        return {a for p in self.terms for a in p}

    def to_element(self) -> TruncatedElement:
        return TruncatedElement(self.N, dict(self.terms))

    @classmethod
    def from_element(cls, el: TruncatedElement) -> "Potential":
        return cls(el.N, dict(el.terms))


def cyclic_derivative(arrow: Arrow, s: Potential, group_orders=None) -> TruncatedElement:
    """The cyclic derivative of the potential along the dual of `arrow`.

    `group_orders` maps vertex labels to group orders; per the group-summed
    definition, each occurrence picks up the factor
    #Gamma_source x #Gamma_target of the arrow.  Pass None for the plain
    (unscaled) character-basis rule; the two differ only by that factor.
    """
    factor = Fraction(1)
    if group_orders is not None:
        factor = Fraction(group_orders[arrow.source.vertex] * group_orders[arrow.target.vertex])
    out = TruncatedElement.zero(max(s.N - 1, 0))
    acc: dict[Path, Fraction] = {}
    for path, coeff in s.terms.items():
        for pos, a in enumerate(path):
            if a != arrow:
                continue
            tail = path[pos + 1:] + path[:pos]
            acc[tail] = acc.get(tail, Fraction(0)) + coeff * factor
            if not acc[tail]:
                del acc[tail]
    out.terms = {p: c for p, c in acc.items() if c}
    return out


def pair_derivative(a_in: Arrow, b_out: Arrow, s: Potential) -> TruncatedElement:
    """Sum over consecutive occurrences of (a_in, b_out) of the complementary path.

    Used for the triangle map gamma: the result runs from target(b_out) to
    source(a_in).  Unscaled.
    """
    acc: dict[Path, Fraction] = {}
    for path, coeff in s.terms.items():
        L = len(path)
        for pos in range(L):
            if path[pos] == a_in and path[(pos + 1) % L] == b_out:
                idxs = [(pos + 2 + t) % L for t in range(L - 2)]
                rest = tuple(path[i] for i in idxs)
                acc[rest] = acc.get(rest, Fraction(0)) + coeff
                if not acc[rest]:
                    del acc[rest]
    out = TruncatedElement.zero(max(s.N - 2, 0))
    out.terms = {p: c for p, c in acc.items() if c}
    return out


# -- E-morphisms --------------------------------------------------------------


@dataclass
class EMorphism:
    """Vertex-fixing algebra morphism, given by arrow images.

    images[a] is a TruncatedElement whose every term shares a's endpoints;
    arrows absent from `images` map to themselves when applied.
    """

    N: int
    images: dict

    def __post_init__(self):
        for a, el in self.images.items():
            for p in el.terms:
                if path_source(p) != a.source or path_target(p) != a.target:
                    raise EndpointMismatch(f"image of {a.name} has mismatched endpoints")

    @classmethod
    def identity(cls, N):
        return cls(N, {})

    def image_of(self, a: Arrow) -> TruncatedElement:
        el = self.images.get(a)
        if el is None:
            return TruncatedElement.of_path(self.N, (a,))
        return el

    def linear_block(self, arrows_from, arrows_to) -> list:
        """Matrix of the degree-1 part between two arrow lists (same endpoints)."""
        m = []
        for a in arrows_from:
            img = self.image_of(a)
            m.append([img.terms.get((b,), Fraction(0)) for b in arrows_to])
        return m

    def apply_element(self, el: TruncatedElement) -> TruncatedElement:
        out = TruncatedElement.zero(self.N)
        for path, coeff in el.terms.items():
            term = TruncatedElement(self.N, {(): Fraction(1)}) if not path else None
            for a in path:
                img = self.image_of(a)
                term = img if term is None else term * img
            out = out + term.scale(coeff)
        return out

    def apply_potential(self, s: Potential) -> Potential:
        out = Potential.zero(s.N)
        for path, coeff in s.terms.items():
            term = None
            for a in path:
                img = self.image_of(a)
                term = img if term is None else term * img
            cyc = Potential(s.N, {p: c * coeff for p, c in term.terms.items()})
            out = out + cyc
        return out

    def then(self, second: "EMorphism") -> "EMorphism":
        """The composite 'apply self, then second'."""
        arrows = set(self.images) | set(second.images)
        images = {}
        for a in arrows:
            images[a] = second.apply_element(self.image_of(a))
        return EMorphism(self.N, images)

    def is_identity(self) -> bool:
        return all(el == TruncatedElement.of_path(self.N, (a,)) for a, el in self.images.items())

    def inverse(self, arrows) -> "EMorphism":
        """Formal inverse on the given arrow set, exact modulo degree N+1."""
        ident = EMorphism.identity(self.N)
        # invert the linear part blockwise
        blocks: dict[tuple, list] = {}
        for a in arrows:
            blocks.setdefault((a.source, a.target), []).append(a)
        lin_images = {}
        for key, blk in blocks.items():
            blk = sorted(blk)
            m = self.linear_block(blk, blk)
            inv = ratlin.invert(ratlin.mat_fraction(m))
            for i, a in enumerate(blk):
                lin_images[a] = TruncatedElement(self.N, {(b,): inv[i][j] for j, b in enumerate(blk) if inv[i][j]})
        psi = EMorphism(self.N, lin_images)
        for _ in range(self.N + 1):
            err = {}
            done = True
            for a in arrows:
                e = self.apply_element(psi.image_of(a)) - TruncatedElement.of_path(self.N, (a,))
                if not e.is_zero():
                    done = False
                err[a] = e
            if done:
                return psi
            fix = {}
            for a in arrows:
                fix[a] = psi.image_of(a) - psi.apply_element(err[a])
            psi = EMorphism(self.N, fix)
        for a in arrows:
            if self.apply_element(psi.image_of(a)) != TruncatedElement.of_path(self.N, (a,)):
                raise ValueError("E-morphism inversion failed to converge")
        return psi


# -- the degree-2 pairing and 2-acyclicity -------------------------------------


def alpha_form(sp: GroupSpecies, arrows, s: Potential, i, j):
    """Matrix of the degree-2 pairing between arrows i->j and arrows j->i.

    Rows index arrows from vertex i to vertex j, columns the reverse arrows.
    The scalar convention (both summands of the group-summed definition, with
    the rotation-sum lift) contributes 2 #Gamma_i #Gamma_j per coefficient;
    only ranks are contract-relevant.
    """
    fwd = sorted(a for a in arrows if a.source.vertex == i and a.target.vertex == j)
    bwd = sorted(a for a in arrows if a.source.vertex == j and a.target.vertex == i)
    scale = 2 * sp.group(i).order * sp.group(j).order
    deg2 = s.degree_part(2)
    m = []
    for a in fwd:
        row = []
        for b in bwd:
            if a.target == b.source and b.target == a.source:
                c = deg2.get(canonical_rotation((a, b)), Fraction(0))
            else:
                c = Fraction(0)
            row.append(c * scale)
        m.append(row)
    return m


def max_rank_check(sp: GroupSpecies, arrows, s: Potential, i, j) -> bool:
    fwd = [a for a in arrows if a.source.vertex == i and a.target.vertex == j]
    bwd = [a for a in arrows if a.source.vertex == j and a.target.vertex == i]
    if not fwd or not bwd:
        return True
    m = alpha_form(sp, arrows, s, i, j)
    return ratlin.rank(ratlin.mat_fraction(m)) == min(len(fwd), len(bwd))


def is_cancellable_pair(sp: GroupSpecies, i, j) -> bool:
    """Whether some potential can cancel all 2-cycles between i and j.

    In the semisimple setting this is multiplicity domination: the dual of
    one bimodule embeds in the other.
    """
    from .species import dual_bimodule

    a_ij = sp.bimodule(i, j)
    a_ji = sp.bimodule(j, i)
    d_ij = dual_bimodule(a_ij)
    d_ji = dual_bimodule(a_ji)
    dom1 = all(x <= y for rx, ry in zip(d_ij.mult, a_ji.mult) for x, y in zip(rx, ry))
    dom2 = all(x <= y for rx, ry in zip(d_ji.mult, a_ij.mult) for x, y in zip(rx, ry))
    return dom1 or dom2


def is_2_acyclic_at(sp: GroupSpecies, k) -> bool:
    """True when no length-2 path runs from block k back to block k."""
    n = len(sp.vertices)
    ki = sp.vertices.index(k)
    for j in range(n):
        if j == ki:
            continue
        out_b = sp.bimodules[ki * n + j]
        in_b = sp.bimodules[j * n + ki]
        if out_b.is_zero() or in_b.is_zero():
            continue
        # composability through characters of vertex j
        for t in range(sp.groups[j].order):
            if any(row[t] for row in out_b.mult) and any(x for x in in_b.mult[t]):
                return False
    return True


def is_2_acyclic(sp: GroupSpecies) -> bool:
    return all(is_2_acyclic_at(sp, v) for v in sp.vertices)


# -- trivial/reduced splitting -------------------------------------------------


@dataclass
class SplitResult:
    trivial_pairs: tuple  # ((u, v), ...) with S_triv = sum of u v
    s_triv: Potential
    reduced_arrows: tuple
    s_rd: Potential
    witness: EMorphism


def split_reduce(sp: GroupSpecies, arrows, s: Potential, N: int | None = None) -> SplitResult:
    """Split a GSP into its trivial and reduced parts, with an explicit witness.

    The witness is an E-isomorphism on the full arrow set satisfying
    witness(S) = S_triv + S_rd exactly modulo degree N+1, where S_triv is the
    canonical sum over the trivial pairs and S_rd avoids them entirely.
    """
    N = s.N if N is None else N
    if s.min_degree() == 1:
        raise NotAGSP("potential has a degree-1 term")
    arrows = tuple(sorted(arrows))
    for a in arrows:
        if a.source.vertex == a.target.vertex:
            raise NotAGSP("species has a loop")

    # stage 1: canonical form of the degree-2 part, blockwise
    blocks: dict[tuple, tuple[list, list]] = {}
    for a in arrows:
        pk, qk = a.source.key(), a.target.key()
        if pk < qk:
            blocks.setdefault((pk, qk), ([], []))[0].append(a)
        else:
            blocks.setdefault((qk, pk), ([], []))[1].append(a)
    deg2 = s.degree_part(2)
    images: dict[Arrow, TruncatedElement] = {}
    pairs: list[tuple[Arrow, Arrow]] = []
    for (pk, qk), (fwd, bwd) in sorted(blocks.items()):
        if not fwd or not bwd:
            continue
        fwd, bwd = sorted(fwd), sorted(bwd)
        c = [[deg2.get(canonical_rotation((u, v)), Fraction(0)) for v in bwd] for u in fwd]
        if all(x == 0 for row in c for x in row):
            continue
        e_mat, f_mat, r = _rank_normal_form(c)
        for i, u in enumerate(fwd):
            images[u] = TruncatedElement(N, {(fwd[t],): e_mat[t][i] for t in range(len(fwd)) if e_mat[t][i]})
        for j, v in enumerate(bwd):
            images[v] = TruncatedElement(N, {(bwd[t],): f_mat[j][t] for t in range(len(bwd)) if f_mat[j][t]})
        pairs.extend((fwd[t], bwd[t]) for t in range(r))
    witness = EMorphism(N, images)
    cur = witness.apply_potential(s)

    trivial = {a for uv in pairs for a in uv}
    partner = {}
    for u, v in pairs:
        partner[u] = v
        partner[v] = u
    u_side = {u for u, _ in pairs}

    canonical = {canonical_rotation((u, v)): Fraction(1) for u, v in pairs}
    d2 = cur.degree_part(2)
    if d2 != canonical:
        raise AssertionError("degree-2 canonical form failed")

    # stage 2: kill higher terms touching trivial arrows
    guard = 0
    while True:
        offenders = [(p, c) for p, c in cur.terms.items() if len(p) >= 3 and any(a in trivial for a in p)]
        if not offenders:
            break
        d = min(len(p) for p, _ in offenders)
        corrections: dict[Arrow, TruncatedElement] = {}
        for w, c in offenders:
            if len(w) != d:
                continue
            pos = next(t for t, a in enumerate(w) if a in trivial)
            t_arrow = w[pos]
            if t_arrow in u_side:
                rot = w[pos:] + w[:pos]
                corr_path = rot[1:]
                target = partner[t_arrow]
            else:
                rot = w[pos + 1:] + w[: pos + 1]
                corr_path = rot[:-1]
                target = partner[t_arrow]
            old = corrections.get(target, TruncatedElement.zero(N))
            corrections[target] = old + TruncatedElement.of_path(N, corr_path, c)
        step_images = {
            a: TruncatedElement.of_path(N, (a,)) - corr for a, corr in corrections.items()
        }
        step = EMorphism(N, step_images)
        cur = step.apply_potential(cur)
        witness = witness.then(step)
        guard += 1
        if guard > N + 2:
            raise AssertionError("splitting elimination failed to terminate")

    s_triv = Potential(N, canonical)
    rd_terms = {p: c for p, c in cur.terms.items() if p not in canonical}
    if any(a in trivial for p in rd_terms for a in p):
        raise AssertionError("reduced part still touches a trivial arrow")
    s_rd = Potential(N, rd_terms)
    reduced_arrows = tuple(a for a in arrows if a not in trivial)
    return SplitResult(tuple(pairs), s_triv, reduced_arrows, s_rd, witness)


def _rank_normal_form(c):
    """Invertible E, F with E @ C @ F = diag(I_r, 0); returns (E, F, r)."""
    rows, cols = len(c), len(c[0])
    aug = [[Fraction(x) for x in c[i]] + [Fraction(1 if j == i else 0) for j in range(rows)] for i in range(rows)]
    r_ech, piv = ratlin.rref(aug)
    piv_c = [p for p in piv if p < cols]
    r = len(piv_c)
    e_mat = [row[cols:] for row in r_ech]
    rr = [row[:cols] for row in r_ech]
    # F columns: unit vectors at pivot columns, then a kernel basis of rr
    fcols = [[Fraction(1 if t == p else 0) for t in range(cols)] for p in piv_c]
    pivset = set(piv_c)
    for free in range(cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for k, p in enumerate(piv_c):
            v[p] = -rr[k][free]
        fcols.append(v)
    f_mat = [[fcols[t][v] for t in range(cols)] for v in range(cols)]
    return e_mat, f_mat, r


# -- truncated Jacobian algebra and deformation space --------------------------


def _relation_span(arrows, s: Potential, N: int):
    """Spanning set of the degree-<=N part of the Jacobian ideal, as path vectors."""
    rels = []
    for a in sorted(set(arrows)):
        d = cyclic_derivative(a, s)
        if d.is_zero():
            continue
        dmin = d.min_degree()
        src, tgt = a.target, a.source  # derivative terms run target(a) -> source(a)
        pre = [()] + enumerate_paths(arrows, N - dmin, end=src)
        post = [()] + enumerate_paths(arrows, N - dmin, start=tgt)
        for p in pre:
            for q in post:
                terms = {}
                for w, c in d.terms.items():
                    if len(p) + len(w) + len(q) > N:
                        continue
                    if p and w and p[-1].target != w[0].source:
                        continue
                    if q and w and w[-1].target != q[0].source:
                        continue
                    path = p + w + q
                    terms[path] = terms.get(path, Fraction(0)) + c
                terms = {k: v for k, v in terms.items() if v}
                if terms:
                    rels.append(terms)
    return rels


def jacobian_basis(sp: GroupSpecies, arrows, s: Potential, N: int):
    """Echelon basis of paths spanning the truncated Jacobian algebra.

    Returns (dimension, idempotent char-vertices, surviving paths).  The
    dimension counts the char-vertex idempotents plus the positive-degree
    quotient.
    """
    all_paths = enumerate_paths(arrows, N)
    index = {p: i for i, p in enumerate(all_paths)}
    rels = _relation_span(arrows, s, N)
    m = []
    for terms in rels:
        row = [Fraction(0)] * len(all_paths)
        for p, c in terms.items():
            row[index[p]] = c
        m.append(row)
    if m:
        _, piv = ratlin.rref(m)
    else:
        piv = []
    pivset = set(piv)
    survivors = [p for i, p in enumerate(all_paths) if i not in pivset]
    idem = sp.char_vertices()
    return len(idem) + len(survivors), idem, survivors


def deformation_space_truncated(sp: GroupSpecies, arrows, s: Potential, N: int) -> int:
    """Dimension of the truncated deformation space Pr / (E + commutators).

    The commutator part is the linear span of commutators of paths (the
    trace-space reading): it kills every non-cycle ([e, p] = p) and identifies
    rotations of cycles, and nothing more.
    """
    all_paths = enumerate_paths(arrows, N)
    index = {p: i for i, p in enumerate(all_paths)}
    gens = []

    def add(terms):
        row = [Fraction(0)] * len(all_paths)
        any_nz = False
        for p, c in terms.items():
            row[index[p]] += c
            any_nz = True
        if any_nz and any(x for x in row):
            gens.append(row)

    for p in all_paths:
        if not is_cycle(p):
            add({p: Fraction(1)})
    for w in all_paths:
        if is_cycle(w) and len(w) > 1:
            rot = w[1:] + w[:1]
            if rot != w:
                add({w: Fraction(1), rot: Fraction(-1)})
    for terms in _relation_span(arrows, s, N):
        add(terms)
    if not gens:
        return len(all_paths)
    return len(all_paths) - len(ratlin.rref(gens)[1])


def apply_emorphism(phi: EMorphism, x):
    """Apply an E-morphism to a truncated element or a potential."""
    if isinstance(x, Potential):
        return phi.apply_potential(x)
    return phi.apply_element(x)
