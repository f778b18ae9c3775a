import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterspecies.exchange import (
    ExchangeMatrix,
    NotSkewSymmetrizable,
    find_skew_symmetrizer,
    mutate_matrix,
)

C3_ROWS = ((0, -1, 0), (1, 0, -1), (0, 2, 0))


def test_symmetrizer_examples():
    assert find_skew_symmetrizer(ExchangeMatrix.from_rows(C3_ROWS)) == (1, 1, 2)
    assert find_skew_symmetrizer(ExchangeMatrix.from_rows([[0]])) == (1,)
    with pytest.raises(NotSkewSymmetrizable):
        find_skew_symmetrizer(ExchangeMatrix.from_rows([[0, 1], [1, 0]]))


def test_symmetrizer_componentwise_minimal():
    # two disconnected blocks each rescale independently to gcd 1
    b = ExchangeMatrix.from_rows([[0, -1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]])
    assert find_skew_symmetrizer(b) == (1, 2, 1, 1)


def test_mutate_example():
    b = ExchangeMatrix.from_rows(C3_ROWS)
    assert mutate_matrix(b, 2).rows == ((0, 1, -1), (-1, 0, 1), (2, -2, 0))
    assert mutate_matrix(ExchangeMatrix.from_rows([[0]]), 1).rows == ((0,),)


@st.composite
def skew_symmetrizable(draw):
    n = draw(st.integers(1, 4))
    d = [draw(st.integers(1, 3)) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = draw(st.integers(-2, 2))
            rows[i][j] = d[i] * c
            rows[j][i] = -d[j] * c
    return ExchangeMatrix.from_rows(rows), tuple(d)


@settings(max_examples=80, deadline=None)
@given(skew_symmetrizable(), st.data())
def test_mutation_involution_and_symmetrizer(bd, data):
    b, d = bd
    k = data.draw(st.sampled_from(b.labels))
    b2 = mutate_matrix(b, k)
    assert mutate_matrix(b2, k) == b
    # the same d stays a symmetrizer after mutation
    for i in range(b.n):
        for j in range(b.n):
            assert b2.rows[i][j] * d[j] == -b2.rows[j][i] * d[i]


def test_json_roundtrip():
    b = ExchangeMatrix.from_rows(C3_ROWS)
    assert ExchangeMatrix.from_json(b.to_json()) == b
