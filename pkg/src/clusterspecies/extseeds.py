"""Extended Y-seeds: one semifield variable per character index.

Mutation multiplies neighboring variables by class-vector powers of the
block-k variables; the specialization map collapsing each character variable
to its vertex variable intertwines this with ordinary Y-seed mutation on
locally free species.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mutation import GSP, MutationUndefined, mutate_gsp
from .polys import SFRational, specialize_sf
from .potential import is_2_acyclic_at
from .seeds import YSeed, zvar, zvars
from .species import CharacterIndex


def yvars(species) -> tuple:
    return tuple(cv.key() for cv in species.char_vertices())


@dataclass(frozen=True)
class ExtendedYSeed:
    gsp: GSP
    variables: tuple  # SFRational per char vertex, in canonical order

    @classmethod
    def free(cls, gsp: GSP) -> "ExtendedYSeed":
        ctx = yvars(gsp.species)
        return cls(gsp, tuple(SFRational.variable(ctx, v) for v in ctx))

    def variable(self, cv: CharacterIndex) -> SFRational:
        return self.variables[self.gsp.species.char_vertices().index(cv)]


def extended_y_seed_mutate(seed: ExtendedYSeed, k) -> ExtendedYSeed:
    sp = seed.gsp.species
    if not is_2_acyclic_at(sp, k):
        raise MutationUndefined(f"extended Y-seed mutation undefined: not 2-acyclic at {k}")
    cvs = sp.char_vertices()
    kchars = sp.group(k).characters()
    yk = {mu: seed.variables[cvs.index(CharacterIndex(k, mu))] for mu in kchars}
    one = SFRational.one(seed.variables[0].vars)
    new_vars = []
    for cv, y in zip(cvs, seed.variables):
        if cv.vertex == k:
            new_vars.append(y.inverse())
            continue
        i = cv.vertex
        a_ik = sp.bimodule(i, k)
        a_ki = sp.bimodule(k, i)
        rho_row = sp.group(i).characters().index(cv.char)
        val = y
        for ci, mu in enumerate(kchars):
            # [rho (x) A_ik]_mu and [rho (x) A_ki^*]_mu = mult of (mu ⊠ rho) in A_ki
            m_in = a_ik.mult[rho_row][ci]
            m_dual = a_ki.mult[ci][rho_row]
            if m_in:
                val = val * yk[mu] ** m_in
            ex = m_dual - m_in
            if ex:
                val = val * (one + yk[mu]) ** ex
        new_vars.append(val)
    return ExtendedYSeed(mutate_gsp(seed.gsp, k), tuple(new_vars))


def specialization_var_map(species) -> dict:
    return {cv.key(): zvar(cv.vertex) for cv in species.char_vertices()}


def specialize_variables(seed: ExtendedYSeed) -> dict:
    """Character-collapsed image of each extended variable, keyed by char vertex."""
    sp = seed.gsp.species
    vm = specialization_var_map(sp)
    ctx = zvars(sp.vertices)
    return {cv: specialize_sf(y, vm, ctx) for cv, y in zip(sp.char_vertices(), seed.variables)}


def specialize_seed(seed: ExtendedYSeed) -> YSeed:
    """The specialized Y-seed; requires the per-vertex images to agree."""
    from .species import exchange_matrix

    sp = seed.gsp.species
    spec = specialize_variables(seed)
    per_vertex = {}
    for cv, val in spec.items():
        prev = per_vertex.setdefault(cv.vertex, val)
        if prev != val:
            raise ValueError(f"specialized variables disagree at vertex {cv.vertex}")
    b = exchange_matrix(sp)
    return YSeed(b, tuple(per_vertex[v] for v in sp.vertices))
