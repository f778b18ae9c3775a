"""Decorated representations: triangle maps, mutation, F-polynomials, invariants.

A representation is a character-graded family of rational vector spaces with
one matrix per arrow (acting on row vectors), subject to the truncated
Jacobian relations; the decoration is a class vector.  Representation
mutation rebuilds the block at the mutation vertex from the alpha/beta/gamma
triangle with deterministic echelon splittings, then transports the result
through the reduction witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import ratlin
from .mutation import GSP, MutationUndefined, mutate
from .paths import Arrow, TruncatedElement
from .polys import IntPolynomial, specialize_poly
from .potential import Potential, cyclic_derivative, is_2_acyclic_at, pair_derivative
from .seeds import zvar, zvars
from .species import CharacterIndex, GroupSpecies


class RelationViolation(ValueError):
    pass


class UnsupportedRegime(ValueError):
    pass


def _zero_matrix(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


class DecoratedRep:
    """Module data over a GSP plus a semisimple decoration class vector."""

    def __init__(self, gsp: GSP, dims: dict, actions: dict, decoration: dict):
        self.gsp = gsp
        cvs = gsp.species.char_vertices()
        self.dims = {cv: int(dims.get(cv, 0)) for cv in cvs}
        self.decoration = {cv: int(decoration.get(cv, 0)) for cv in cvs}
        self.actions = {}
        for a in gsp.arrows:
            m = actions.get(a)
            r, c = self.dims[a.source], self.dims[a.target]
            if m is None:
                m = _zero_matrix(r, c)
            else:
                m = [[Fraction(x) for x in row] for row in m]
                if len(m) != r or any(len(row) != c for row in m):
                    raise ValueError(f"action of {a.name} has wrong shape")
            self.actions[a] = m

    @classmethod
    def zero(cls, gsp: GSP, decoration=None) -> "DecoratedRep":
        return cls(gsp, {}, {}, decoration or {})

    @classmethod
    def negative_simple(cls, gsp: GSP, cv: CharacterIndex) -> "DecoratedRep":
        return cls(gsp, {}, {}, {cv: 1})

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def class_vector(self) -> dict:
        return dict(self.dims)

    def decoration_vector(self) -> dict:
        return dict(self.decoration)

    def is_zero_module(self) -> bool:
        return self.total_dim() == 0

    def path_action(self, path) -> list:
        if not path:
            raise ValueError("empty path has no single action matrix")
        r = self.dims[path[0].source]
        c = self.dims[path[-1].target]
        if r == 0 or c == 0:
            return _zero_matrix(r, c)
        m = self.actions[path[0]]
        for a in path[1:]:
            if self.dims[a.source] == 0:
                return _zero_matrix(r, c)
            m = ratlin.mat_mul(m, self.actions[a])
        return m

    def element_action(self, el: TruncatedElement, source: CharacterIndex, target: CharacterIndex) -> list:
        out = _zero_matrix(self.dims[source], self.dims[target])
        for p, coeff in el.terms.items():
            if not p:
                if source == target:
                    for i in range(self.dims[source]):
                        out[i][i] += coeff
                continue
            if p[0].source != source or p[-1].target != target:
                continue
            m = self.path_action(p)
            for i in range(len(out)):
                for j in range(len(out[0])):
                    out[i][j] += coeff * m[i][j]
        return out

    def check_relations(self) -> None:
        """Every cyclic derivative of the potential must annihilate the module."""
        s = self.gsp.potential
        for a in self.gsp.arrows:
            d = cyclic_derivative(a, s)
            if d.is_zero():
                continue
            m = self.element_action(d, a.target, a.source)
            if any(x for row in m for x in row):
                raise RelationViolation(f"relation from dual of {a.name} fails")

    def check_nilpotent(self) -> None:
        """Paths of length N must act as zero (tracked via reachable row spaces)."""
        n = self.gsp.N
        frontier = {cv: ratlin.identity(d) for cv, d in self.dims.items() if d}
        for _ in range(n):
            nxt = {}
            for a in self.gsp.arrows:
                if a.source in frontier and self.dims[a.target]:
                    m = ratlin.mat_mul(frontier[a.source], self.actions[a])
                    if any(x for row in m for x in row):
                        nxt.setdefault(a.target, []).extend(m)
            frontier = {cv: ratlin.row_space(rows) for cv, rows in nxt.items()}
            frontier = {cv: rs for cv, rs in frontier.items() if rs}
            if not frontier:
                return
        raise RelationViolation("module is not nilpotent within the truncation degree")

    def to_json(self):
        return {
            "dims": {cv.key(): d for cv, d in sorted(self.dims.items()) if d},
            "arrows": [
                {"id": a.name, "matrix": [[str(x) for x in row] for row in self.actions[a]]}
                for a in self.gsp.arrows
                if any(x for row in self.actions[a] for x in row)
            ],
            "decoration": {cv.key(): d for cv, d in sorted(self.decoration.items()) if d},
        }

    @classmethod
    def from_json(cls, gsp: GSP, data) -> "DecoratedRep":
        keymap = {cv.key(): cv for cv in gsp.species.char_vertices()}
        dims = {keymap[k]: v for k, v in data.get("dims", {}).items()}
        deco = {keymap[k]: v for k, v in data.get("decoration", {}).items()}
        byname = {a.name: a for a in gsp.arrows}
        actions = {}
        for item in data.get("arrows", []):
            a = byname[item["id"]]
            actions[a] = [[Fraction(x) for x in row] for row in item["matrix"]]
        return cls(gsp, dims, actions, deco)


# -- triangle maps -------------------------------------------------------------


@dataclass
class TriangleBlock:
    char: tuple
    ins: list  # arrows into (k, char)
    outs: list  # arrows out of (k, char)
    alpha: list  # X_in -> X(k)
    beta: list  # X(k) -> X_out
    gamma: list  # X_out -> X_in


@dataclass
class TriangleMaps:
    vertex: object
    blocks: dict  # char tuple -> TriangleBlock


def triangle_maps(rep: DecoratedRep, k, check: bool = True) -> TriangleMaps:
    sp = rep.gsp.species
    s = rep.gsp.potential
    blocks = {}
    for mu in sp.group(k).characters():
        cv = CharacterIndex(k, mu)
        ins = sorted(a for a in rep.gsp.arrows if a.target == cv)
        outs = sorted(b for b in rep.gsp.arrows if b.source == cv)
        dk = rep.dims[cv]
        din = sum(rep.dims[a.source] for a in ins)
        dout = sum(rep.dims[b.target] for b in outs)
        alpha = _zero_matrix(din, dk)
        r0 = 0
        for a in ins:
            m = rep.actions[a]
            for i, row in enumerate(m):
                alpha[r0 + i] = [Fraction(x) for x in row]
            r0 += rep.dims[a.source]
        beta = _zero_matrix(dk, dout)
        c0 = 0
        for b in outs:
            m = rep.actions[b]
            for i in range(dk):
                for j in range(rep.dims[b.target]):
                    beta[i][c0 + j] = m[i][j]
            c0 += rep.dims[b.target]
        gamma = _zero_matrix(dout, din)
        r0 = 0
        for b in outs:
            c0 = 0
            for a in ins:
                d = pair_derivative(a, b, s)
                if not d.is_zero():
                    m = rep.element_action(d, b.target, a.source)
                    for i in range(rep.dims[b.target]):
                        for j in range(rep.dims[a.source]):
                            gamma[r0 + i][c0 + j] = m[i][j]
                c0 += rep.dims[a.source]
            r0 += rep.dims[b.target]
        if check:
            if not ratlin.mat_eq_zero(ratlin.mat_mul(gamma, alpha)):
                raise RelationViolation(f"alpha∘gamma is nonzero at ({k}, {mu})")
            if not ratlin.mat_eq_zero(ratlin.mat_mul(beta, gamma)):
                raise RelationViolation(f"gamma∘beta is nonzero at ({k}, {mu})")
        blocks[mu] = TriangleBlock(mu, ins, outs, alpha, beta, gamma)
    return TriangleMaps(k, blocks)


# -- g- and h-vectors ----------------------------------------------------------


def g_vector(rep: DecoratedRep) -> dict:
    """g over all character indices: [ker gamma_k] - [X(k)] + [V(k)]."""
    out = {}
    for k in rep.gsp.species.vertices:
        tm = triangle_maps(rep, k, check=False)
        for mu, blk in tm.blocks.items():
            cv = CharacterIndex(k, mu)
            kerg = len(ratlin.left_kernel(blk.gamma)) if blk.gamma else 0
            out[cv] = kerg - rep.dims[cv] + rep.decoration[cv]
    return out


def h_vector(rep: DecoratedRep) -> dict:
    out = {}
    for k in rep.gsp.species.vertices:
        tm = triangle_maps(rep, k, check=False)
        for mu, blk in tm.blocks.items():
            cv = CharacterIndex(k, mu)
            kerb = len(ratlin.left_kernel(blk.beta)) if blk.beta else 0
            out[cv] = -kerb
    return out


def reduced_vector(sp: GroupSpecies, vec: dict) -> tuple:
    return tuple(sum(vec[CharacterIndex(v, mu)] for mu in sp.group(v).characters()) for v in sp.vertices)


# -- representation mutation ---------------------------------------------------


def mutate_rep(rep: DecoratedRep, k, check: bool = True):
    """One mutation of a decorated representation; returns (new rep, report)."""
    g = rep.gsp
    if not is_2_acyclic_at(g.species, k):
        raise MutationUndefined(f"GSP is not 2-acyclic at {k}")
    need = max(g.N, rep.total_dim() + 1, 3)
    if need != g.N:
        g = g.with_truncation(need)
        rep = DecoratedRep(g, rep.dims, rep.actions, rep.decoration)
    if check:
        rep.check_relations()
    report = mutate(g, k)
    pre = report.premutated
    tm = triangle_maps(rep, k, check=check)

    new_dims = dict(rep.dims)
    new_deco = dict(rep.decoration)
    new_actions: dict[Arrow, list] = {}
    for a in pre.arrows:
        if a.source.vertex != k and a.target.vertex != k and a in rep.actions:
            new_actions[a] = rep.actions[a]
    for (a, b), comp in pre.composites.items():
        new_actions[comp] = rep.path_action((a, b))

    for mu, blk in tm.blocks.items():
        cv = CharacterIndex(k, mu)
        din = len(blk.alpha)
        dout = len(blk.gamma)
        kerg = ratlin.left_kernel(blk.gamma) if dout else []
        imb = ratlin.row_space(blk.beta) if blk.beta else []
        img = ratlin.row_space(blk.gamma) if blk.gamma else []
        kera = ratlin.left_kernel(blk.alpha) if din else []
        quot_g = ratlin.complement_in(kerg, imb)  # representatives of ker gamma / im beta
        quot_a = ratlin.complement_in(kera, img)  # representatives of ker alpha / im gamma
        vdim = rep.decoration[cv]
        p_, gdim, q_ = len(quot_g), len(img), len(quot_a)
        new_dk = p_ + gdim + q_ + vdim
        new_dims[cv] = new_dk

        # alpha' = (-pi rho, -gamma, 0, 0): X_out -> X'(k)
        alpha_p = _zero_matrix(dout, new_dk)
        if dout:
            ext = ratlin.complement_in(ratlin.identity(dout), kerg)
            full = [r[:] for r in kerg] + [r[:] for r in ext]
            pinv = ratlin.invert(full)
            # coordinates of each unit vector in [kerg; ext]; keep the kerg part
            kcoords = [row[: len(kerg)] for row in pinv]
            qb = [r[:] for r in quot_g] + [r[:] for r in imb]
            if kerg:
                k_to_qb = ratlin.coords_in_basis(qb, kerg) if qb else []
                proj = ratlin.mat_mul(kcoords, k_to_qb) if qb else _zero_matrix(dout, 0)
                for i in range(dout):
                    for j in range(p_):
                        alpha_p[i][j] = -proj[i][j]
            if img:
                gcoords = ratlin.coords_in_basis(img, blk.gamma)
                for i in range(dout):
                    for j in range(gdim):
                        alpha_p[i][p_ + j] = -gcoords[i][j]

        # beta' = (0, iota, iota sigma, 0): X'(k) -> X_in
        beta_p = _zero_matrix(new_dk, din)
        for i, v in enumerate(img):
            for j in range(din):
                beta_p[p_ + i][j] = v[j]
        for i, v in enumerate(quot_a):
            for j in range(din):
                beta_p[p_ + gdim + i][j] = v[j]

        # slice into per-arrow actions
        r0 = 0
        for b in blk.outs:
            dual = pre.duals[b]
            dimq = rep.dims[b.target]
            new_actions[dual] = [alpha_p[r0 + i][:] for i in range(dimq)]
            r0 += dimq
        c0 = 0
        for a in blk.ins:
            dual = pre.duals[a]
            dimp = rep.dims[a.source]
            new_actions[dual] = [[beta_p[i][c0 + j] for j in range(dimp)] for i in range(new_dk)]
            c0 += dimp

        kerb = ratlin.left_kernel(blk.beta) if blk.beta else []
        ima = ratlin.row_space(blk.alpha) if blk.alpha else []
        inter = ratlin.intersect_row_spaces(kerb, ima)
        new_deco[cv] = len(kerb) - len(inter)

    pre_gsp = GSP(pre.species, pre.arrows, pre.potential, pre.N)
    mid = DecoratedRep(pre_gsp, new_dims, new_actions, new_deco)
    if check:
        mid.check_relations()

    # transport along the reduction witness, then canonical renaming
    inv = report.split.witness.inverse(pre.arrows)
    final_actions = {}
    for old_arrow in report.split.reduced_arrows:
        el = inv.image_of(old_arrow)
        new_arrow = report.arrow_renaming[old_arrow]
        final_actions[new_arrow] = mid.element_action(el, old_arrow.source, old_arrow.target)
    if check:
        for u, v in report.split.trivial_pairs:
            for t_arrow in (u, v):
                m = mid.element_action(inv.image_of(t_arrow), t_arrow.source, t_arrow.target)
                if any(x for row in m for x in row):
                    raise RelationViolation("trivial arrow acts nontrivially after transport")
    out = DecoratedRep(report.reduced, new_dims, final_actions, new_deco)
    if check:
        out.check_relations()
        out.check_nilpotent()
    return out, report


def mutate_gspdr_sequence(g: GSP, decoration: dict, seq) -> DecoratedRep:
    """Forward-mutate the GSP along seq, seed (0, V), then sweep the reps back."""
    seq = list(seq)
    chain = [g]
    for t, k in enumerate(seq):
        try:
            chain.append(mutate(chain[-1], k).reduced)
        except Exception as e:
            raise MutationUndefined(f"GSP sweep failed at prefix {seq[: t + 1]}: {e}") from e
    rep = DecoratedRep.zero(chain[-1], decoration)
    for t, k in enumerate(reversed(seq)):
        try:
            rep, _ = mutate_rep(rep, k)
        except Exception as e:
            raise MutationUndefined(f"rep sweep failed at step {t} (vertex {k}): {e}") from e
    return rep


# -- submodule Grassmannians and F-polynomials ---------------------------------


def _is_thin(rep: DecoratedRep) -> bool:
    return all(d <= 1 for d in rep.dims.values())


def grassmannian_chi_map(rep: DecoratedRep, regime: str = "auto") -> dict:
    """Map from class vectors (tuples over char vertices) to Euler characteristics."""
    cvs = rep.gsp.species.char_vertices()
    if regime == "auto":
        regime = "thin" if _is_thin(rep) else "counting"
    if regime == "thin":
        if not _is_thin(rep):
            raise UnsupportedRegime("thin evaluator on a non-thin module")
        return _chi_thin(rep, cvs)
    if regime == "counting":
        return _chi_counting(rep, cvs)
    raise UnsupportedRegime(regime)


def _chi_thin(rep: DecoratedRep, cvs) -> dict:
    support = [cv for cv in cvs if rep.dims[cv]]
    edges = []
    for a in rep.gsp.arrows:
        if rep.dims[a.source] and rep.dims[a.target] and rep.actions[a][0][0] != 0:
            edges.append((a.source, a.target))
    chi: dict[tuple, int] = {}
    for bits in itertools.product((0, 1), repeat=len(support)):
        chosen = {cv for cv, b in zip(support, bits) if b}
        if any(src in chosen and tgt not in chosen for src, tgt in edges):
            continue
        e = tuple(1 if cv in chosen else 0 for cv in cvs)
        chi[e] = chi.get(e, 0) + 1
    return chi


def _subspaces_mod_p(dim: int, p: int):
    """All subspaces of F_p^dim as tuples of echelon basis rows."""
    if dim == 0:
        return [()]
    out = [()]
    for r in range(1, dim + 1):
        for pivots in itertools.combinations(range(dim), r):
            free_positions = []
            for i, pv in enumerate(pivots):
                for c in range(pv + 1, dim):
                    if c not in pivots:
                        free_positions.append((i, c))
            for vals in itertools.product(range(p), repeat=len(free_positions)):
                rows = [[0] * dim for _ in range(r)]
                for i, pv in enumerate(pivots):
                    rows[i][pv] = 1
                for (i, c), v in zip(free_positions, vals):
                    rows[i][c] = v
                out.append(tuple(tuple(row) for row in rows))
    return out


def _row_reduce_mod_p(rows, p):
    rows = [list(r) for r in rows if any(x % p for x in r)]
    lead = 0
    for col in range(len(rows[0]) if rows else 0):
        piv = None
        for i in range(lead, len(rows)):
            if rows[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        inv = pow(rows[lead][col], -1, p)
        rows[lead] = [(x * inv) % p for x in rows[lead]]
        for i in range(len(rows)):
            if i != lead and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[lead])]
        lead += 1
    return [r for r in rows if any(r)]


def _in_span_mod_p(rows, vec, p):
    if not any(x % p for x in vec):
        return True
    if not rows:
        return False
    before = len(_row_reduce_mod_p(list(rows), p))
    after = len(_row_reduce_mod_p(list(rows) + [list(vec)], p))
    return before == after


def _chi_counting(rep: DecoratedRep, cvs) -> dict:
    denoms = set()
    for m in rep.actions.values():
        for row in m:
            for x in row:
                denoms.add(x.denominator)
    degree_bound = sum((d * d) // 4 for d in rep.dims.values()) + 1
    primes = []
    cand = 2
    while len(primes) < degree_bound + 1:
        cand = _next_prime(cand)
        if all(d % cand for d in denoms if d > 1) or all(d == 1 for d in denoms):
            if all(d % cand != 0 for d in denoms):
                primes.append(cand)
    counts_per_prime = []
    support = [cv for cv in cvs if rep.dims[cv]]
    for p in primes:
        actions_p = {}
        for a, m in rep.actions.items():
            actions_p[a] = [[(x.numerator * pow(x.denominator, -1, p)) % p for x in row] for row in m]
        sub_lists = {cv: _subspaces_mod_p(rep.dims[cv], p) for cv in support}
        counts: dict[tuple, int] = {}
        for combo in itertools.product(*(sub_lists[cv] for cv in support)):
            chosen = dict(zip(support, combo))
            ok = True
            for a in rep.gsp.arrows:
                if a.source not in chosen or rep.dims[a.target] == 0:
                    continue
                tgt_rows = chosen.get(a.target, ())
                for u in chosen[a.source]:
                    img = [sum(u[i] * actions_p[a][i][j] for i in range(len(u))) % p for j in range(rep.dims[a.target])]
                    if not _in_span_mod_p(tgt_rows, img, p):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            e = tuple(len(chosen[cv]) if cv in chosen else 0 for cv in cvs)
            counts[e] = counts.get(e, 0) + 1
        counts_per_prime.append(counts)
    keys = set()
    for c in counts_per_prime:
        keys.update(c)
    chi = {}
    for e in keys:
        vals = [c.get(e, 0) for c in counts_per_prime]
        chi_e = _interp_at_one(primes, vals)
        if chi_e:
            chi[e] = chi_e
    return chi


def _next_prime(n: int) -> int:
    c = n + 1
    while True:
        if all(c % f for f in range(2, int(c**0.5) + 1)):
            return c
        c += 1


def _interp_at_one(xs, ys) -> int:
    """Lagrange interpolation evaluated at 1; asserts an integer value."""
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if i != j:
                term *= Fraction(1 - xj, xi - xj)
        total += term
    if total.denominator != 1:
        raise UnsupportedRegime("point counts do not interpolate to an integer at q=1")
    return int(total)


def grassmannian_euler(rep: DecoratedRep, e: dict, regime: str = "auto") -> int:
    cvs = rep.gsp.species.char_vertices()
    key = tuple(int(e.get(cv, 0)) for cv in cvs)
    return grassmannian_chi_map(rep, regime).get(key, 0)


def f_polynomial(rep: DecoratedRep, regime: str = "auto") -> IntPolynomial:
    """F_X as a polynomial in one variable per character index."""
    cvs = rep.gsp.species.char_vertices()
    ctx = tuple(cv.key() for cv in cvs)
    chi = grassmannian_chi_map(rep, regime)
    return IntPolynomial(ctx, {e: c for e, c in chi.items()})


def f_polynomial_reduced(rep: DecoratedRep, regime: str = "auto") -> IntPolynomial:
    """The specialization of F_X collapsing character variables per vertex."""
    sp = rep.gsp.species
    cvs = sp.char_vertices()
    var_map = {cv.key(): zvar(cv.vertex) for cv in cvs}
    return specialize_poly(f_polynomial(rep, regime), var_map, zvars(sp.vertices))


# -- Hom spaces and E-invariants ------------------------------------------------


def _hom_solution_basis(x: DecoratedRep, y: DecoratedRep, restrict_to_vertex=None):
    if x.gsp.species.vertices != y.gsp.species.vertices:
        raise ValueError("Hom between representations of different species")
    names_x = {a.name: a for a in x.gsp.arrows}
    names_y = {a.name: a for a in y.gsp.arrows}
    if set(names_x) != set(names_y):
        raise ValueError("Hom needs identical arrow bases")
    cvs = x.gsp.species.char_vertices()
    unknowns = []
    offset = {}
    for cv in cvs:
        if restrict_to_vertex is not None and cv.vertex != restrict_to_vertex:
            continue
        offset[cv] = len(unknowns)
        unknowns.extend((cv, i, j) for i in range(x.dims[cv]) for j in range(y.dims[cv]))
    nunk = len(unknowns)
    rows = []
    for name, a in names_x.items():
        ay = names_y[name]
        p, q = a.source, a.target
        dxp, dxq = x.dims[p], x.dims[q]
        dyp, dyq = y.dims[p], y.dims[q]
        for i in range(dxp):
            for j in range(dyq):
                row = [Fraction(0)] * nunk
                # (X_a f_q)_{ij} = sum_t X_a[i][t] f_q[t][j]
                if q in offset:
                    for t in range(dxq):
                        row[offset[q] + t * dyq + j] += x.actions[a][i][t]
                # (f_p Y_a)_{ij} = sum_t f_p[i][t] Y_a[t][j]
                if p in offset:
                    for t in range(dyp):
                        row[offset[p] + i * dyp + t] -= y.actions[ay][t][j]
                if any(row):
                    rows.append(row)
    if not nunk:
        return [], unknowns
    if not rows:
        return ratlin.identity(nunk), unknowns
    return ratlin.left_kernel(ratlin.transpose(rows)), unknowns


def hom_dim(x: DecoratedRep, y: DecoratedRep) -> int:
    basis, _ = _hom_solution_basis(x, y)
    return len(basis)


def hom_k_dim(x: DecoratedRep, y: DecoratedRep, k) -> int:
    """Dimension of module maps vanishing away from block k."""
    basis, _ = _hom_solution_basis(x, y, restrict_to_vertex=k)
    return len(basis)


def pairing(e1: dict, e2: dict) -> int:
    keys = set(e1) | set(e2)
    return sum(e1.get(cv, 0) * e2.get(cv, 0) for cv in keys)


def e_inj(x: DecoratedRep, y: DecoratedRep) -> int:
    return hom_dim(x, y) + pairing(x.class_vector(), g_vector(y))


def e_sym(x: DecoratedRep, y: DecoratedRep) -> int:
    return e_inj(x, y) + e_inj(y, x)


def e_inv(x: DecoratedRep) -> int:
    return e_inj(x, x)


# -- duality --------------------------------------------------------------------


def dual_rep(rep: DecoratedRep) -> DecoratedRep:
    """The contragredient representation over the opposite GSP."""
    from .paths import arrows_to_species, canonical_arrows

    g = rep.gsp
    sp = g.species
    op_raw = {}
    for a in g.arrows:
        src = CharacterIndex(a.target.vertex, sp.group(a.target.vertex).invert_character(a.target.char))
        tgt = CharacterIndex(a.source.vertex, sp.group(a.source.vertex).invert_character(a.source.char))
        op_raw[a] = Arrow(src, tgt, a.copy, f"op({a.name})")
    op_arrows, rename = canonical_arrows(sp.vertices, sp.groups, op_raw.values())
    op_species = arrows_to_species(sp.vertices, sp.groups, op_arrows)
    terms = {}
    for p, c in g.potential.terms.items():
        q = tuple(rename[op_raw[a]] for a in reversed(p))
        terms[q] = terms.get(q, Fraction(0)) + c
    op_gsp = GSP(op_species, op_arrows, Potential(g.N, terms), g.N)
    dims = {}
    deco = {}
    for cv, d in rep.dims.items():
        icv = CharacterIndex(cv.vertex, sp.group(cv.vertex).invert_character(cv.char))
        dims[icv] = d
    for cv, d in rep.decoration.items():
        icv = CharacterIndex(cv.vertex, sp.group(cv.vertex).invert_character(cv.char))
        deco[icv] = d
    actions = {}
    for a in g.arrows:
        r, c = rep.dims[a.source], rep.dims[a.target]
        m = rep.actions[a]
        actions[rename[op_raw[a]]] = [[m[i][j] for i in range(r)] for j in range(c)]
    return DecoratedRep(op_gsp, dims, actions, deco)


# -- cluster character -----------------------------------------------------------


def cluster_character(rep: DecoratedRep, regime: str = "auto") -> dict:
    """Laurent polynomial (exponent tuple over vertices -> coefficient)."""
    from .species import exchange_matrix

    sp = rep.gsp.species
    b = exchange_matrix(sp)
    n = len(sp.vertices)
    chi = grassmannian_chi_map(rep, regime)
    cvs = sp.char_vertices()
    dvec = [sum(rep.dims[cv] for cv in cvs if cv.vertex == v) for v in sp.vertices]
    rg = []
    for v in sp.vertices:
        tm = triangle_maps(rep, v, check=False)
        rg.append(sum(ratlin.rank(blk.gamma) if blk.gamma else 0 for blk in tm.blocks.values()))
    out: dict[tuple, int] = {}
    for e_key, chi_e in chi.items():
        evec = [0] * n
        for cv, ec in zip(cvs, e_key):
            evec[sp.vertices.index(cv.vertex)] += ec
        exp = []
        for i in range(n):
            tot = -dvec[i] - rg[i]
            for j in range(n):
                bij = b.rows[i][j]
                tot += max(0, bij) * evec[j] + max(0, -bij) * (dvec[j] - evec[j])
            exp.append(tot)
        key = tuple(exp)
        out[key] = out.get(key, 0) + chi_e
        if not out[key]:
            del out[key]
    return out


# -- class data for the E-invariant bounds ---------------------------------------


def triangle_class_data(rep: DecoratedRep) -> dict:
    """Per char vertex: dims of ker beta, ker gamma, im beta, im alpha, im gamma."""
    out = {}
    for k in rep.gsp.species.vertices:
        tm = triangle_maps(rep, k, check=False)
        for mu, blk in tm.blocks.items():
            cv = CharacterIndex(k, mu)
            kerb = len(ratlin.left_kernel(blk.beta)) if blk.beta else 0
            kerg = len(ratlin.left_kernel(blk.gamma)) if blk.gamma else 0
            imb = len(ratlin.row_space(blk.beta)) if blk.beta else 0
            ima = len(ratlin.row_space(blk.alpha)) if blk.alpha else 0
            img = len(ratlin.row_space(blk.gamma)) if blk.gamma else 0
            out[cv] = {"ker_beta": kerb, "ker_gamma": kerg, "im_beta": imb, "im_alpha": ima, "im_gamma": img}
    return out


def e_invariant_lower_bound(rep: DecoratedRep) -> int:
    """([⊕ ker beta] | [⊕ ker gamma / im beta]) + ([X] | [V])."""
    data = triangle_class_data(rep)
    kerb = {cv: d["ker_beta"] for cv, d in data.items()}
    quot = {cv: d["ker_gamma"] - d["im_beta"] for cv, d in data.items()}
    return pairing(kerb, quot) + pairing(rep.class_vector(), rep.decoration_vector())


def eics_dichotomies(rep: DecoratedRep) -> bool:
    """The two zero-E dichotomies, checked per character index.

    These are the per-component vanishing conditions of the lower bound:
    [X]_rho [V]_rho = 0 and [ker beta]_rho ([ker gamma]_rho - [im beta]_rho) = 0.
    """
    data = triangle_class_data(rep)
    for cv in rep.gsp.species.char_vertices():
        if rep.dims[cv] and rep.decoration[cv]:
            return False
        d = data[cv]
        if d["ker_beta"] != 0 and d["ker_gamma"] != d["im_beta"]:
            return False
    return True


# -- isomorphism testing ----------------------------------------------------------


def isomorphic_gspdr(x: DecoratedRep, y: DecoratedRep, draws: int = 24) -> bool:
    """Equal dimension data plus an invertible intertwiner.

    Searches an invertible element of the Hom solution space: first generic
    integer combinations of a solution basis (deterministic draw schedule),
    then, in tiny solution spaces, a bounded exhaustive rational search.
    """
    if x.dims != y.dims or x.decoration != y.decoration:
        return False
    if x.total_dim() == 0:
        return True
    basis, unknowns = _hom_solution_basis(x, y)
    if not basis:
        return False
    cvs = [cv for cv in x.gsp.species.char_vertices() if x.dims[cv]]

    def blocks_of(coeffs):
        f = [sum(c * v for c, v in zip(coeffs, col)) for col in zip(*basis)]
        per = {}
        for (cv, i, j), val in zip(unknowns, f):
            if x.dims[cv]:
                per.setdefault(cv, _zero_matrix(x.dims[cv], y.dims[cv]))[i][j] = val
        return per

    def invertible(coeffs):
        per = blocks_of(coeffs)
        for cv in cvs:
            m = per.get(cv)
            if m is None:
                return False
            try:
                ratlin.invert(m)
            except ValueError:
                return False
        return True

    s = len(basis)
    for t in range(1, draws + 1):
        coeffs = [Fraction(t) ** i for i in range(s)]
        if invertible(coeffs):
            return True
    if s <= 4:
        for combo in itertools.product((-2, -1, 0, 1, 2), repeat=s):
            if any(combo) and invertible([Fraction(c) for c in combo]):
                return True
    return False


def chi_regime(rep: DecoratedRep) -> str:
    """Which Euler-characteristic evaluator the automatic mode selects.

    "counting" results assume the submodule point count is polynomial in q.
    """
    return "thin" if _is_thin(rep) else "counting"
