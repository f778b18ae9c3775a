import json

import pytest

from clusterspecies.cli import main

C3_MATRIX = "0,-1,0;1,0,-1;0,2,0"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fg_golden(capsys):
    code, out, _ = run_cli(capsys, "fg", "--matrix", C3_MATRIX, "--seq", "2,1,3", "--vertex", "3")
    assert code == 0
    data = json.loads(out)
    assert data["g"] == [0, 0, -1]
    assert {tuple(t["exp"]): t["coeff"] for t in data["F"]} == {
        (0, 0, 0): 1,
        (0, 0, 1): 1,
        (0, 1, 1): 1,
        (1, 1, 1): 1,
    }


def test_fg_empty_sequence(capsys):
    code, out, _ = run_cli(capsys, "fg", "--matrix", C3_MATRIX, "--seq", "-", "--vertex", "2")
    assert code == 0
    data = json.loads(out)
    assert data["g"] == [0, 1, 0]


def test_species_matrix_roundtrip(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "species-from-matrix", "--matrix", "0,1;-2,0")
    assert code == 0
    species = json.loads(out)
    f = tmp_path / "sp.json"
    f.write_text(json.dumps(species))
    code, out, _ = run_cli(capsys, "b-matrix", "--species", str(f))
    assert code == 0
    assert json.loads(out)["rows"] == [[0, 1], [-2, 0]]


def test_mutate_twice_byte_identical(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "example-c3")
    species = json.loads(out)["species"]
    f = tmp_path / "c3.json"
    f.write_text(json.dumps(species))
    code, out1, _ = run_cli(capsys, "mutate", "--species", str(f), "--at", "3")
    assert code == 0
    once = json.loads(out1)["reduced"]["species"]
    f2 = tmp_path / "m3.json"
    f2.write_text(json.dumps(once))
    code, out2, _ = run_cli(capsys, "mutate", "--species", str(f2), "--at", "3")
    twice = json.loads(out2)["reduced"]["species"]
    assert json.dumps(twice, sort_keys=True) == json.dumps(species, sort_keys=True)


def test_verify_all_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "--matrix", C3_MATRIX, "--max-len", "3")
    assert code == 0
    assert json.loads(out)["all_pass"] is True


def test_counterexample_subcommand(capsys):
    code, out, _ = run_cli(capsys, "counterexample", "--m", "1")
    assert code == 0
    assert json.loads(out)["reports"][0]["empty"] is True
    code, out, _ = run_cli(capsys, "counterexample", "--m", "1", "--control")
    assert json.loads(out)["reports"][0]["empty"] is False


def test_probe_subcommand(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "example-c3")
    species = json.loads(out)["species"]
    f = tmp_path / "c3.json"
    f.write_text(json.dumps(species))
    code, out, _ = run_cli(capsys, "probe", "--species", str(f), "--max-len", "3", "--trials", "1")
    assert code == 0
    assert json.loads(out)["all_nondegenerate_so_far"] is True


def test_rep_mutate_subcommand(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "example-c3")
    species = json.loads(out)["species"]
    f = tmp_path / "c3.json"
    f.write_text(json.dumps(species))
    rep = {"dims": {}, "arrows": [], "decoration": {"3:1": 1}}
    rf = tmp_path / "rep.json"
    rf.write_text(json.dumps(rep))
    code, out, _ = run_cli(capsys, "rep-mutate", "--species", str(f), "--rep", str(rf), "--at", "3")
    assert code == 0
    data = json.loads(out)
    assert data["dims"] == {"3:1": 1} and data["decoration"] == {}


def test_domain_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "fg", "--matrix", "0,1;1,0", "--seq", "1", "--vertex", "1")
    assert code == 1
    payload = json.loads(err)
    assert "error" in payload and "witness" in payload


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fg", "--matrix", C3_MATRIX])
    assert exc.value.code == 2


def test_deterministic_output(capsys):
    code, out1, _ = run_cli(capsys, "verify", "--matrix", C3_MATRIX, "--max-len", "2")
    code, out2, _ = run_cli(capsys, "verify", "--matrix", C3_MATRIX, "--max-len", "2")
    assert out1 == out2


def test_fg_matrix_from_file(tmp_path, capsys):
    f = tmp_path / "c3.json"
    f.write_text(json.dumps({"labels": [1, 2, 3], "rows": [[0, -1, 0], [1, 0, -1], [0, 2, 0]]}))
    code, out, _ = run_cli(capsys, "fg", "--matrix", str(f), "--seq", "2,1,3", "--vertex", "3")
    assert code == 0
    assert json.loads(out)["g"] == [0, 0, -1]
