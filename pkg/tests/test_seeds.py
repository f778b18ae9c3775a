import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterspecies.exchange import ExchangeMatrix, mutate_matrix
from clusterspecies.polys import IntPolynomial, SFRational
from clusterspecies.seeds import (
    FGState,
    YSeed,
    compute_fg,
    compute_fg_state,
    fg_mutate,
    tropical_h_from_F,
    y_seed_mutate,
    zvars,
)

from oracles import fz_principal_fg

C3 = ExchangeMatrix.from_rows([[0, -1, 0], [1, 0, -1], [0, 2, 0]])
RANK2 = ExchangeMatrix.from_rows([[0, 1], [-2, 0]])


def poly_terms(f: IntPolynomial):
    return dict(f.terms)


# -- Y-seeds --------------------------------------------------------------------


def test_y_seed_mutation_formula_c3():
    seed = YSeed.free(C3)
    out = y_seed_mutate(seed, 3)
    ctx = zvars(C3.labels)
    z = {a: SFRational.variable(ctx, f"z{a}") for a in (1, 2, 3)}
    one = SFRational.one(ctx)
    assert out.variable(3) == z[3].inverse()
    # b_{3,2} = 2: exponent max(0, 2) on z3 and -2 on (1+z3)
    assert out.variable(2) == z[2] * z[3] ** 2 * (one + z[3]) ** -2
    assert out.variable(1) == z[1]


def test_y_seed_involution_and_rank1():
    seed = YSeed.free(C3)
    for k in (1, 2, 3):
        assert y_seed_mutate(y_seed_mutate(seed, k), k) == seed
    b1 = ExchangeMatrix.from_rows([[0]])
    s1 = YSeed.free(b1)
    assert y_seed_mutate(s1, 1).variable(1) == s1.variable(1).inverse()


# -- tropical h ------------------------------------------------------------------


def test_tropical_h_examples():
    ctx = zvars(C3.labels)
    one = IntPolynomial.one(ctx)
    z1 = IntPolynomial.variable(ctx, "z1")
    z2 = IntPolynomial.variable(ctx, "z2")
    z3 = IntPolynomial.variable(ctx, "z3")
    assert tropical_h_from_F(one, C3) == (0, 0, 0)
    f = one + z3 + z2 * z3 + z1 * z2 * z3
    # brute-force over the four monomials gives (0,0,-1)
    assert tropical_h_from_F(f, C3) == (0, 0, -1)
    b1 = ExchangeMatrix.from_rows([[0]])
    ctx1 = zvars(b1.labels)
    assert tropical_h_from_F(IntPolynomial.one(ctx1) + IntPolynomial.variable(ctx1, "z1"), b1) == (-1,)


# -- the fg engine ----------------------------------------------------------------


def test_compute_fg_golden_c3():
    f, g = compute_fg(C3, (2, 1, 3), 3)
    ctx = zvars(C3.labels)
    expect = IntPolynomial(ctx, {(0, 0, 0): 1, (0, 0, 1): 1, (0, 1, 1): 1, (1, 1, 1): 1})
    assert f == expect
    assert g == (0, 0, -1)


def test_compute_fg_empty_and_rank2():
    f, g = compute_fg(C3, (), 3)
    assert f.is_one() and g == (0, 0, 1)
    f, g = compute_fg(RANK2, (1,), 1)
    ctx = zvars(RANK2.labels)
    assert f == IntPolynomial.one(ctx) + IntPolynomial.variable(ctx, "z1")
    assert g == (-1, 2)


def test_fg_mutate_involution():
    st_ = compute_fg_state(C3, (2, 1, 3))
    for k in (1, 2, 3):
        assert fg_mutate(fg_mutate(st_, k), k) == st_


def test_initial_state_vs_direct_seed_mutation():
    # one prepended mutation from the initial state equals the oracle
    for rows in (C3.rows, RANK2.rows):
        b = ExchangeMatrix.from_rows(rows)
        for k in b.labels:
            state = fg_mutate(FGState.initial(mutate_matrix(b, k)), k)
            for j, lab in enumerate(b.labels):
                f, g = state.tracked[j]
                of, og = fz_principal_fg([list(r) for r in b.rows], (k,), lab)
                assert poly_terms(f) == of
                assert g == og


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from((1, 2, 3)), max_size=5))
def test_fg_matches_fz_oracle_c3(seq):
    seq = tuple(k for i, k in enumerate(seq) if i == 0 or k != seq[i - 1])
    state = compute_fg_state(C3, seq)
    for j, lab in enumerate(C3.labels):
        of, og = fz_principal_fg([list(r) for r in C3.rows], seq, lab)
        f, g = state.tracked[j]
        assert poly_terms(f) == of
        assert g == og


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from((1, 2)), max_size=6))
def test_fg_matches_fz_oracle_rank2(seq):
    seq = tuple(k for i, k in enumerate(seq) if i == 0 or k != seq[i - 1])
    state = compute_fg_state(RANK2, seq)
    for j, lab in enumerate(RANK2.labels):
        of, og = fz_principal_fg([list(r) for r in RANK2.rows], seq, lab)
        f, g = state.tracked[j]
        assert poly_terms(f) == of
        assert g == og


def test_constant_term_guard():
    # a corrupted state (F without constant term 1) is rejected
    ctx = zvars(C3.labels)
    bad = IntPolynomial(ctx, {(1, 0, 0): 1})
    state = FGState(C3, ((bad, (1, 0, 0)),) + tuple(FGState.initial(C3).tracked[1:]))
    with pytest.raises(Exception):
        fg_mutate(state, 1)
