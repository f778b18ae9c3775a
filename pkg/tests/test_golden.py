"""Golden files for the worked example never drift: byte-exact comparisons."""

import json
import os

from clusterspecies.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run_capture(capsys, *argv):
    code = main(list(argv))
    assert code == 0
    return capsys.readouterr().out


def test_c3_bundle_golden(capsys):
    out = run_capture(capsys, "--format", "pretty", "example-c3")
    with open(os.path.join(GOLDEN, "c3_bundle.json")) as fh:
        assert out == fh.read()


def test_counterexample_golden(capsys):
    out = run_capture(capsys, "--format", "pretty", "counterexample", "--m", "1,2")
    with open(os.path.join(GOLDEN, "counterexample.json")) as fh:
        assert out == fh.read()


def test_verify_golden(capsys):
    out = run_capture(capsys, "--format", "pretty", "verify", "--matrix", "0,-1,0;1,0,-1;0,2,0", "--max-len", "4")
    with open(os.path.join(GOLDEN, "verify_c3_len4.json")) as fh:
        assert out == fh.read()


def test_bundle_contents_pin_the_example():
    with open(os.path.join(GOLDEN, "c3_bundle.json")) as fh:
        data = json.load(fh)
    assert data["b_matrix"]["rows"] == [[0, -1, 0], [1, 0, -1], [0, 2, 0]]
    assert data["symmetrizer"] == [1, 1, 2]
    assert data["fg_seq_2_1_3_vertex_3"]["g"] == [0, 0, -1]
    assert data["final_rep_dims"] == {"1:0": 1, "2:0": 1, "3:1": 1}
    assert data["final_rep_g_reduced"] == [0, 0, -1]
