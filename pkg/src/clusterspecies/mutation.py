"""Mutation of group species with potentials.

Premutation dualizes the arrows at the mutation vertex, adjoins one composite
arrow per composable length-2 passage, rewrites the potential through the
composites and adds the canonical cubic term; reduction then strips the
trivial part.  Everything is exact and deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exchange import ExchangeMatrix, mutate_matrix
from .paths import Arrow, TruncatedElement, arrows_to_species, canonical_arrows, enumerate_paths, species_arrows
from .potential import (
    EMorphism,
    Potential,
    SplitResult,
    deformation_space_truncated,
    is_2_acyclic,
    is_2_acyclic_at,
    jacobian_basis,
    split_reduce,
)
from .species import GroupSpecies, NotLocallyFree, exchange_matrix, is_locally_free


class NotTwoAcyclicAtK(ValueError):
    pass


class MutationNotTwoAcyclic(ValueError):
    pass


class MutationUndefined(ValueError):
    pass


@dataclass(frozen=True)
class GSP:
    species: GroupSpecies
    arrows: tuple
    potential: Potential
    N: int

    def __post_init__(self):
        if self.N < 3:
            raise ValueError("GSP truncation must be at least 3")
        used = self.potential.arrows_used()
        if not used.issubset(set(self.arrows)):
            raise ValueError("potential uses arrows outside the species basis")

    @classmethod
    def make(cls, species: GroupSpecies, potential_terms=None, N: int = 6) -> "GSP":
        arrows = species_arrows(species)
        pot = Potential(N, potential_terms or {})
        return cls(species, arrows, pot, N)

    def with_truncation(self, N: int) -> "GSP":
        if N == self.N:
            return self
        pot = Potential(N, dict(self.potential.terms))
        return GSP(self.species, self.arrows, pot, N)

    def arrow_by_name(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def group_orders(self) -> dict:
        return {v: g.order for v, g in zip(self.species.vertices, self.species.groups)}

    def jacobian_dimension(self) -> int:
        return jacobian_basis(self.species, self.arrows, self.potential, self.N)[0]

    def to_json(self):
        return {
            "species": self.species.to_json(),
            "N": self.N,
            "potential": potential_to_json(self.potential),
        }

    @classmethod
    def from_json(cls, data) -> "GSP":
        sp = GroupSpecies.from_json(data["species"])
        g = cls.make(sp, None, data["N"])
        byname = {a.name: a for a in g.arrows}
        terms = {}
        for t in data["potential"]["terms"]:
            path = tuple(byname[x] for x in t["cycle"])
            terms[path] = Fraction(t["coeff"])
        return cls(sp, g.arrows, Potential(data["N"], terms), data["N"])


def potential_to_json(s: Potential):
    return {
        "N": s.N,
        "terms": [
            {"coeff": str(c), "cycle": [a.name for a in p]}
            for p, c in sorted(s.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ],
    }


def dual_arrow(a: Arrow) -> Arrow:
    return Arrow(a.target, a.source, a.copy, f"({a.name})*")


def composite_arrow(a: Arrow, b: Arrow) -> Arrow:
    return Arrow(a.source, b.target, 0, f"[{a.name}|{b.name}]")


@dataclass(frozen=True)
class Premutated:
    """Premutation output; arrow names carry their provenance."""

    species: GroupSpecies
    arrows: tuple
    potential: Potential
    N: int
    composites: dict  # (a, b) -> composite arrow
    duals: dict  # old arrow at k -> dual arrow


def premutate(g: GSP, k) -> Premutated:
    sp = g.species
    if k not in sp.vertices:
        raise KeyError(f"unknown vertex {k}")
    if not is_2_acyclic_at(sp, k):
        raise NotTwoAcyclicAtK(f"species is not 2-acyclic at {k}")
    kept = [a for a in g.arrows if a.source.vertex != k and a.target.vertex != k]
    ins = [a for a in g.arrows if a.target.vertex == k]
    outs = [a for a in g.arrows if a.source.vertex == k]
    composites = {}
    for a in ins:
        for b in outs:
            if a.target == b.source:
                composites[(a, b)] = composite_arrow(a, b)
    duals = {c: dual_arrow(c) for c in ins + outs}
    new_arrows = tuple(sorted(kept + list(composites.values()) + list(duals.values())))

    def rewrite(path):
        if all(a.source.vertex != k and a.target.vertex != k for a in path):
            return path
        r = next(t for t, a in enumerate(path) if a.source.vertex != k)
        w = path[r:] + path[:r]
        out = []
        t = 0
        while t < len(w):
            if w[t].target.vertex == k:
                out.append(composites[(w[t], w[t + 1])])
                t += 2
            else:
                out.append(w[t])
                t += 1
        return tuple(out)

    terms = {}
    for p, c in g.potential.terms.items():
        np_ = rewrite(p)
        if len(np_) <= g.N:
            terms[np_] = terms.get(np_, Fraction(0)) + c
    for (a, b), comp in composites.items():
        tri = (comp, duals[b], duals[a])
        terms[tri] = terms.get(tri, Fraction(0)) + 1
    s_new = Potential(g.N, terms)
    new_species = arrows_to_species(sp.vertices, sp.groups, new_arrows)
    return Premutated(new_species, new_arrows, s_new, g.N, composites, duals)


@dataclass
class GSPMutationReport:
    vertex: object
    premutated: Premutated
    split: SplitResult
    reduced: GSP
    arrow_renaming: dict  # premutated reduced arrow -> canonical arrow
    b_before: ExchangeMatrix | None
    b_after: ExchangeMatrix | None
    two_acyclic_after: bool
    two_acyclic_verdicts: dict  # unordered vertex pair -> bool

    def to_json(self):
        return {
            "vertex": self.vertex,
            "reduced": self.reduced.to_json(),
            "b_before": self.b_before.to_json() if self.b_before else None,
            "b_after": self.b_after.to_json() if self.b_after else None,
            "two_acyclic_after": self.two_acyclic_after,
            "two_acyclic_verdicts": {f"{i}|{j}": v for (i, j), v in sorted(self.two_acyclic_verdicts.items(), key=lambda kv: str(kv[0]))},
            "trivial_rank": len(self.split.trivial_pairs),
        }


def mutate(g: GSP, k) -> GSPMutationReport:
    pre = premutate(g, k)
    split = split_reduce(pre.species, pre.arrows, pre.potential, g.N)
    can_arrows, renaming = canonical_arrows(g.species.vertices, g.species.groups, split.reduced_arrows)
    red_species = arrows_to_species(g.species.vertices, g.species.groups, can_arrows)
    red_terms = {tuple(renaming[a] for a in p): c for p, c in split.s_rd.terms.items()}
    reduced = GSP(red_species, can_arrows, Potential(g.N, red_terms), g.N)
    try:
        b_before = exchange_matrix(g.species)
    except NotLocallyFree:
        b_before = None
    try:
        b_after = exchange_matrix(red_species)
    except NotLocallyFree:
        b_after = None
    verdicts = {}
    vs = red_species.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            n = len(vs)
            pair_free = red_species.bimodules[i * n + j].is_zero() or red_species.bimodules[j * n + i].is_zero()
            verdicts[(vs[i], vs[j])] = pair_free
    return GSPMutationReport(
        vertex=k,
        premutated=pre,
        split=split,
        reduced=reduced,
        arrow_renaming=renaming,
        b_before=b_before,
        b_after=b_after,
        two_acyclic_after=is_2_acyclic(red_species),
        two_acyclic_verdicts=verdicts,
    )


def mutate_gsp(g: GSP, k) -> GSP:
    return mutate(g, k).reduced


def b_compat_check(g: GSP, k) -> bool:
    """mu_k(B(A,S)) == B(mu_k(A,S)); only asserted when the mutation is 2-acyclic."""
    ok, _ = is_locally_free(g.species)
    if not ok:
        raise NotLocallyFree("b-compatibility needs a locally free species")
    rep = mutate(g, k)
    if not rep.two_acyclic_after:
        raise MutationNotTwoAcyclic(f"mutation at {k} is not 2-acyclic")
    if rep.b_after is None:
        raise NotLocallyFree("mutated species is not locally free")
    return mutate_matrix(rep.b_before, k) == rep.b_after


def rigidity_check(g: GSP) -> bool:
    return deformation_space_truncated(g.species, g.arrows, g.potential, g.N) == 0


def cycle_basis(g: GSP, max_degree: int | None = None):
    """Rotation classes of cyclic paths up to the requested degree."""
    from .potential import canonical_rotation
    from .paths import is_cycle

    max_degree = g.N if max_degree is None else min(max_degree, g.N)
    seen = {}
    for p in enumerate_paths(g.arrows, max_degree):
        if len(p) >= 2 and is_cycle(p):
            seen[canonical_rotation(p)] = True
    return sorted(seen, key=lambda p: (len(p), p))


@dataclass
class ProbeTrial:
    coefficients: dict
    degenerate_sequence: tuple | None


@dataclass
class ProbeReport:
    max_len: int
    trials: list
    all_nondegenerate_so_far: bool

    def to_json(self):
        return {
            "max_len": self.max_len,
            "trials": [
                {
                    "potential": {"|".join(a.name for a in p): str(c) for p, c in t.coefficients.items()},
                    "degenerate_sequence": list(t.degenerate_sequence) if t.degenerate_sequence else None,
                }
                for t in self.trials
            ],
            "all_nondegenerate_so_far": self.all_nondegenerate_so_far,
        }


def probe_nondegeneracy(g: GSP, max_len: int, trials: int, seed: int = 0, coeff_range=(-2, 2)) -> ProbeReport:
    """Sample potentials and walk every mutation sequence up to max_len.

    A trial fails (degenerate) as soon as a reduced mutation stops being
    2-acyclic; the failing sequence prefix is recorded.  Finite success is
    evidence, not proof.
    """
    rng = random.Random(seed)
    basis = cycle_basis(g)
    out = []
    for _ in range(max(1, trials)):
        coeffs = {}
        for p in basis:
            c = rng.randint(*coeff_range)
            if c:
                coeffs[p] = Fraction(c)
        trial_gsp = GSP(g.species, g.arrows, Potential(g.N, coeffs), g.N)
        witness = _probe_walk(trial_gsp, (), None, max_len)
        out.append(ProbeTrial(coeffs, witness))
        if not basis:
            break  # only the zero potential exists
    return ProbeReport(max_len, out, all(t.degenerate_sequence is None for t in out))


def _probe_walk(g: GSP, prefix, last, max_len):
    if len(prefix) >= max_len:
        return None
    for k in g.species.vertices:
        if k == last:
            continue
        seq = prefix + (k,)
        if not is_2_acyclic_at(g.species, k):
            # unreachable from a fully 2-acyclic parent, kept as a guard
            return seq
        nxt = mutate_gsp(g, k)
        if not is_2_acyclic(nxt.species):
            return seq
        witness = _probe_walk(nxt, seq, k, max_len)
        if witness is not None:
            return witness
    return None


def corner_dimension(sp: GroupSpecies, arrows, potential: Potential, k, N: int) -> int:
    """dim of the truncated Jacobian algebra's corner avoiding block k.

    Counts path classes whose endpoints lie outside block k (the paths may
    pass through k).  Relation generators are endpoint-homogeneous, so the
    corner of the quotient is the quotient of the corner.
    """
    from .potential import _relation_span
    from .paths import path_source, path_target

    all_paths = [
        p
        for p in enumerate_paths(arrows, N)
        if path_source(p).vertex != k and path_target(p).vertex != k
    ]
    index = {p: i for i, p in enumerate(all_paths)}
    rows = []
    for terms in _relation_span(arrows, potential, N):
        some = next(iter(terms))
        if path_source(some).vertex == k or path_target(some).vertex == k:
            continue
        row = [Fraction(0)] * len(all_paths)
        ok = True
        for p, c in terms.items():
            if p not in index:
                ok = False
                break
            row[index[p]] = c
        if ok and any(row):
            rows.append(row)
    from . import ratlin

    rank = len(ratlin.rref(rows)[1]) if rows else 0
    idem = sum(g.order for v, g in zip(sp.vertices, sp.groups) if v != k)
    return idem + len(all_paths) - rank


def corner_dimension_report(g: GSP, k) -> dict:
    """Report-valued heuristic: the corner dimension before and after premutation.

    The underlying isomorphism is degree-inhomogeneous, so equality can fail
    at small truncation; callers decide what to do with a mismatch.
    """
    pre = premutate(g, k)
    before = corner_dimension(g.species, g.arrows, g.potential, k, g.N)
    after = corner_dimension(pre.species, pre.arrows, pre.potential, k, g.N)
    return {"vertex": k, "N": g.N, "before": before, "after": after, "equal": before == after}
