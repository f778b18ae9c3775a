"""Acceptance criteria, one test per criterion, each printing a verdict line.

Run with `pytest -s tests/test_acceptance.py` (or scripts/run_acceptance.py)
to see the per-criterion lines.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from clusterspecies.counterexample import counterexample_search
from clusterspecies.exchange import ExchangeMatrix, mutate_matrix
from clusterspecies.extseeds import ExtendedYSeed, extended_y_seed_mutate
from clusterspecies.mutation import (
    GSP,
    MutationNotTwoAcyclic,
    b_compat_check,
    cycle_basis,
    mutate_gsp,
)
from clusterspecies.paths import species_arrows
from clusterspecies.polys import IntPolynomial
from clusterspecies.potential import Potential, cyclic_derivative, is_2_acyclic_at
from clusterspecies.reps import (
    DecoratedRep,
    e_inv,
    e_invariant_lower_bound,
    e_sym,
    eics_dichotomies,
    f_polynomial_reduced,
    g_vector,
    isomorphic_gspdr,
    mutate_gspdr_sequence,
    mutate_rep,
    reduced_vector,
)
from clusterspecies.seeds import YSeed, compute_fg, compute_fg_state, y_seed_mutate, zvars
from clusterspecies.species import (
    CharacterIndex,
    FiniteAbelianGroup,
    GroupSpecies,
    c3_species,
    exchange_matrix,
    species_from_matrix,
)
from clusterspecies.verify import enumerate_sequences, verify_conjectures

from oracles import group_basis_cyclic_derivative

C3B = ExchangeMatrix.from_rows([[0, -1, 0], [1, 0, -1], [0, 2, 0]])
RANK2B = ExchangeMatrix.from_rows([[0, 1], [-2, 0]])
GOLDEN_F_TERMS = {(0, 0, 0): 1, (0, 0, 1): 1, (0, 1, 1): 1, (1, 1, 1): 1}


def _verdict(name, ok, extra=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}{': ' + extra if extra else ''}")
    assert ok, name


def all_char_indices(sp):
    return sp.char_vertices()


def test_criterion_golden_example():
    """Worked-example reproduction: fg on seq (2,1,3), vertex 3, under 1 s."""
    t0 = time.time()
    b = exchange_matrix(c3_species())
    f, g = compute_fg(b, (2, 1, 3), 3)
    elapsed = time.time() - t0
    ok = dict(f.terms) == GOLDEN_F_TERMS and g == (0, 0, -1) and elapsed < 1.0
    _verdict("golden fg reproduction (seq 2,1,3 vertex 3)", ok, f"{elapsed:.3f}s")


def test_criterion_b_matrix_of_example_species():
    b = exchange_matrix(c3_species())
    _verdict("exchange matrix of the worked species", b == C3B, str(b.rows))


def test_criterion_dual_engine_equality():
    """Representation-side (specialized F, reduced g) equals the combinatorial engine."""
    t0 = time.time()
    checked = 0
    for sp, b, max_len in (
        (c3_species(), C3B, 6),
        (species_from_matrix(RANK2B, (1, 2)), RANK2B, 8),
    ):
        g0 = GSP.make(sp, N=6)
        cvs = all_char_indices(sp)
        for seq in enumerate_sequences(b.labels, max_len):
            state = compute_fg_state(b, seq)
            for cv in cvs:
                rep = mutate_gspdr_sequence(g0, {cv: 1}, seq)
                f_c, g_c = state.pair(cv.vertex)
                assert f_polynomial_reduced(rep) == f_c, (seq, cv)
                assert reduced_vector(rep.gsp.species, g_vector(rep)) == g_c, (seq, cv)
                checked += 1
    elapsed = time.time() - t0
    _verdict("dual-engine equality", elapsed < 300, f"{checked} pairs in {elapsed:.1f}s")


def _random_inputs(count=100):
    rng = random.Random(20240817)
    out = []
    while len(out) < count:
        n = rng.randint(2, 3)
        d = [rng.choice((1, 1, 2)) for _ in range(n)]
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                c = rng.randint(-2, 2)
                rows[i][j] = d[i] * c
                rows[j][i] = -d[j] * c
        b = ExchangeMatrix.from_rows(rows)
        sp = species_from_matrix(b, tuple(d))
        g = GSP.make(sp, N=5)
        basis = cycle_basis(g, 4)
        terms = {p: Fraction(c) for p in basis if (c := rng.randint(-1, 1))}
        g = GSP(sp, g.arrows, Potential(5, terms), 5)
        out.append((g, rng.choice(sp.vertices), rng.randrange(1 << 30)))
    return out


def test_criterion_involution_suites():
    inputs = _random_inputs(100)
    shipped = [
        (GSP.make(c3_species(), N=6), 3, 0),
        (GSP.make(species_from_matrix(RANK2B, (1, 2)), N=6), 2, 0),
    ]
    counts = {"matrix": 0, "yseed": 0, "extseed": 0, "gsp": 0, "gspdr": 0}
    for g, k, salt in shipped + inputs:
        b = exchange_matrix(g.species)
        assert mutate_matrix(mutate_matrix(b, k), k) == b
        counts["matrix"] += 1
        seed = YSeed.free(b)
        assert y_seed_mutate(y_seed_mutate(seed, k), k) == seed
        counts["yseed"] += 1
        if not is_2_acyclic_at(g.species, k):
            continue
        try:
            es = ExtendedYSeed.free(g)
            es2 = extended_y_seed_mutate(extended_y_seed_mutate(es, k), k)
        except Exception:
            continue
        assert es2.variables == es.variables
        assert es2.gsp.species == es.gsp.species
        counts["extseed"] += 1
        back = mutate_gsp(mutate_gsp(g, k), k)
        assert back.species == g.species
        assert exchange_matrix(back.species) == b
        assert back.jacobian_dimension() == g.jacobian_dimension()
        counts["gsp"] += 1
        # a decorated representation obtained by a short sweep, then doubled
        rng = random.Random(salt)
        cvs = all_char_indices(g.species)
        deco = {rng.choice(cvs): 1}
        seq = tuple(rng.choice(g.species.vertices) for _ in range(rng.randint(0, 2)))
        seq = tuple(x for i, x in enumerate(seq) if i == 0 or x != seq[i - 1])
        try:
            rep = mutate_gspdr_sequence(g, deco, seq)
            twice, _ = mutate_rep(mutate_rep(rep, k)[0], k)
        except Exception:
            continue
        assert twice.dims == rep.dims and twice.decoration == rep.decoration
        if twice.gsp.potential == rep.gsp.potential:
            assert isomorphic_gspdr(rep, twice)
        else:
            assert reduced_vector(rep.gsp.species, g_vector(rep)) == reduced_vector(
                twice.gsp.species, g_vector(twice)
            )
            assert e_inv(rep) == e_inv(twice)
        counts["gspdr"] += 1
    ok = (
        counts["matrix"] >= 100
        and counts["yseed"] >= 100
        and counts["extseed"] >= 95
        and counts["gsp"] >= 95
        and counts["gspdr"] >= 90
    )
    _verdict("involution suites (matrix/Y-seed/extended/GSP/GSPDR)", ok, str(counts))


def test_criterion_b_compatibility():
    checked = 0
    for g in (GSP.make(c3_species(), N=6), GSP.make(species_from_matrix(RANK2B, (1, 2)), N=6)):
        for k in g.species.vertices:
            assert b_compat_check(g, k)
            checked += 1
    defined = 0
    for g, k, _ in _random_inputs(100):
        try:
            assert b_compat_check(g, k)
            defined += 1
        except MutationNotTwoAcyclic:
            continue
    _verdict("B-compatibility on shipped + random inputs", defined >= 60, f"{checked} shipped, {defined} random defined")


def test_criterion_conjecture_suites():
    rep = verify_conjectures(C3B, 6)
    _verdict(
        "conjecture suites (5.4, 5.5, 6.13, 7.10, 7.12) on the rank-3 example, length 6",
        rep.all_pass,
        json.dumps(rep.cases_checked),
    )


def test_criterion_e_invariant_suite():
    g0 = GSP.make(c3_species(), N=6)
    cvs = all_char_indices(g0.species)
    reps = []
    for seq in enumerate_sequences((1, 2, 3), 3):
        for cv in cvs:
            reps.append((seq, cv, mutate_gspdr_sequence(g0, {cv: 1}, seq)))
    zero_ok = all(e_inv(r) == 0 for _, _, r in reps)
    bound_ok = all(e_inv(r) >= e_invariant_lower_bound(r) for _, _, r in reps)
    eics_ok = all(eics_dichotomies(r) for _, _, r in reps if e_inv(r) == 0)
    sym_ok = True
    by_seq = {}
    for seq, cv, r in reps:
        by_seq.setdefault(seq, []).append(r)
    for seq, group in list(by_seq.items())[:12]:
        x, y = group[0], group[-1]
        for k in (1, 2, 3):
            mx, _ = mutate_rep(x, k)
            my, _ = mutate_rep(y, k)
            if e_sym(x, y) != e_sym(mx, my):
                sym_ok = False
    ok = zero_ok and bound_ok and eics_ok and sym_ok
    _verdict(
        "E-invariant suite (zero on images of negatives, lower bound, dichotomies, sym-invariance)",
        ok,
        f"{len(reps)} reps",
    )


def test_criterion_counterexample_instance():
    t0 = time.time()
    empties = [counterexample_search(m).empty for m in (1, 2)]
    control = [not counterexample_search(m, control=True).empty for m in (1, 2)]
    elapsed = time.time() - t0
    ok = all(empties) and all(control) and elapsed < 120
    _verdict("obstruction-matrix instance check (m=1,2 empty; control nonempty)", ok, f"{elapsed:.1f}s")


def test_criterion_cyclic_derivative_oracle():
    groups = [(), (2,), (3,), (4,), (2, 2)]
    checked = 0
    for g1 in groups:
        for g2 in groups:
            G1, G2 = FiniteAbelianGroup(g1), FiniteAbelianGroup(g2)
            sp = GroupSpecies.build(
                (1, 2),
                [G1, G2],
                {(1, 2): [[1] * G2.order for _ in range(G1.order)], (2, 1): [[1] * G1.order for _ in range(G2.order)]},
            )
            arrows = species_arrows(sp)
            orders = {1: G1.order, 2: G2.order}
            fwd = [a for a in arrows if a.source.vertex == 1]
            bwd = [a for a in arrows if a.source.vertex == 2]
            terms = {}
            for a in fwd:
                for b in bwd:
                    if a.target == b.source and b.target == a.source and len(terms) < 3:
                        terms[(a, b)] = Fraction(len(terms) + 1)
            for a in fwd:
                for b in bwd:
                    for c in fwd:
                        for d in bwd:
                            if (
                                a.target == b.source
                                and b.target == c.source
                                and c.target == d.source
                                and d.target == a.source
                                and len(terms) < 5
                            ):
                                terms[(a, b, c, d)] = Fraction(1, 2)
            s = Potential(6, terms)
            for xi in arrows:
                assert cyclic_derivative(xi, s, group_orders=orders) == group_basis_cyclic_derivative(sp, xi, s)
                checked += 1
    _verdict("cyclic-derivative group-basis oracle equivalence (orders <= 4)", checked > 0, f"{checked} derivatives")
