import json
import threading
import urllib.error
import urllib.request

import pytest

from clusterspecies.server import make_server

C3_BODY = {"matrix": {"labels": [1, 2, 3], "rows": [[0, -1, 0], [1, 0, -1], [0, 2, 0]]}}


@pytest.fixture(scope="module")
def server_url():
    httpd = make_server(0)
    port = httpd.server_address[1]
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{port}"
    httpd.shutdown()
    httpd.server_close()


def post(url, path, body=None):
    req = urllib.request.Request(
        url + path, data=json.dumps(body or {}).encode(), headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req) as r:
            return r.status, json.loads(r.read())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())


def get(url, path):
    try:
        with urllib.request.urlopen(url + path) as r:
            return r.status, json.loads(r.read())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())


def test_golden_session_flow(server_url):
    code, st = post(server_url, "/api/sessions", C3_BODY)
    assert code == 200
    sid = st["id"]
    for k in (3, 1, 2):
        code, st = post(server_url, f"/api/sessions/{sid}/mutate", {"k": k})
        assert code == 200
    assert st["history"] == [3, 1, 2]
    assert st["fg"]["3"]["g"] == [0, 0, -1]
    assert {tuple(t["exp"]): t["coeff"] for t in st["fg"]["3"]["F"]} == {
        (0, 0, 0): 1,
        (0, 0, 1): 1,
        (0, 1, 1): 1,
        (1, 1, 1): 1,
    }


def test_mutate_then_undo_restores_initial(server_url):
    code, st0 = post(server_url, "/api/sessions", C3_BODY)
    sid = st0["id"]
    code, _ = post(server_url, f"/api/sessions/{sid}/mutate", {"k": 1})
    code, st1 = post(server_url, f"/api/sessions/{sid}/undo")
    assert json.dumps(st1, sort_keys=True) == json.dumps(st0, sort_keys=True)


def test_replay_determinism(server_url):
    states = []
    for _ in range(2):
        code, st = post(server_url, "/api/sessions", C3_BODY)
        sid = st["id"]
        for k in (2, 1, 3):
            code, st = post(server_url, f"/api/sessions/{sid}/mutate", {"k": k})
        st.pop("id")
        states.append(json.dumps(st, sort_keys=True))
    assert states[0] == states[1]


def test_unknown_session_404(server_url):
    code, payload = get(server_url, "/api/sessions/nope")
    assert code == 404 and payload["error"] == "UnknownSession"


def test_degenerate_mutation_400_with_witness(server_url):
    bad = {
        "species": {
            "vertices": [{"id": 1, "group": []}, {"id": 2, "group": []}],
            "bimodules": [
                {"from": 1, "to": 2, "mult": [[1]]},
                {"from": 2, "to": 1, "mult": [[1]]},
            ],
        }
    }
    code, st = post(server_url, "/api/sessions", bad)
    assert code == 200
    assert st["mutable"] == {"1": False, "2": False}
    code, payload = post(server_url, f"/api/sessions/{st['id']}/mutate", {"k": 1})
    assert code == 400
    assert payload["error"] == "NotTwoAcyclicAtK" and payload["witness"]


def test_get_returns_current_state(server_url):
    code, st = post(server_url, "/api/sessions", C3_BODY)
    sid = st["id"]
    post(server_url, f"/api/sessions/{sid}/mutate", {"k": 3})
    code, got = get(server_url, f"/api/sessions/{sid}")
    assert code == 200 and got["history"] == [3]
    assert got["layout"] and got["B"]
