from clusterspecies.counterexample import (
    control_matrix,
    counterexample_search,
    mult_matrices,
    obstruction_matrix,
)
from clusterspecies.exchange import find_skew_symmetrizer


def test_obstruction_matrix_symmetrizer():
    assert find_skew_symmetrizer(obstruction_matrix()) == (2, 2, 2, 2, 2, 1)
    assert find_skew_symmetrizer(control_matrix()) == (1, 1, 1, 1, 1, 1)


def test_mult_matrix_enumeration():
    perms = mult_matrices(2, 2, 1, 1)
    assert sorted(perms) == [((0, 1), (1, 0)), ((1, 0), (0, 1))]
    assert len(mult_matrices(4, 4, 1, 1)) == 24
    assert len(mult_matrices(4, 2, 1, 2)) == 6
    assert mult_matrices(2, 3, 1, 1) == []


def test_search_empty_for_both_scales():
    for m in (1, 2):
        rep = counterexample_search(m)
        assert rep.empty, f"m={m} should have no satisfying assignment"
        assert rep.assignments_total > 0
        assert "instance-level" in rep.scope_note.lower() or "Instance-level" in rep.scope_note


def test_control_matrix_is_satisfiable():
    for m in (1, 2):
        rep = counterexample_search(m, control=True)
        assert not rep.empty


def test_report_json():
    data = counterexample_search(1).to_json()
    assert data["empty"] is True and data["satisfying_count"] == 0
    assert data["trace"]
