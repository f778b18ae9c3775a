"""JSON-over-HTTP session service for interactive mutation walks.

Sessions are in-memory: a species (as a GSP) evolves by clicked mutations;
the per-vertex F-polynomial/g-vector panel is recomputed from the initial
exchange matrix and the reversed click history, which is the indexing the
double-sweep representation picture attaches to the current seed.  Each
session serializes its operations behind a lock; distinct sessions run
concurrently.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .exchange import ExchangeMatrix
from .mutation import GSP, MutationUndefined, NotTwoAcyclicAtK, mutate
from .potential import is_2_acyclic_at
from .seeds import compute_fg_state
from .species import GroupSpecies, exchange_matrix, species_from_matrix


@dataclass
class SessionState:
    sid: str
    initial: GSP
    history: list = field(default_factory=list)
    chain: list = field(default_factory=list)  # GSPs after each click
    lock: threading.Lock = field(default_factory=threading.Lock)

    def current(self) -> GSP:
        return self.chain[-1] if self.chain else self.initial

    def layout(self) -> dict:
        vs = self.initial.species.vertices
        n = len(vs)
        out = {}
        for i, v in enumerate(vs):
            ang = 2 * math.pi * i / n - math.pi / 2
            out[str(v)] = [round(50 + 40 * math.cos(ang), 3), round(50 + 40 * math.sin(ang), 3)]
        return out

    def to_json(self) -> dict:
        g = self.current()
        sp = g.species
        b0 = exchange_matrix(self.initial.species)
        state = compute_fg_state(b0, tuple(reversed(self.history)))
        fg = {}
        for lab in b0.labels:
            f, gv = state.pair(lab)
            fg[str(lab)] = {"F": f.to_json(), "g": list(gv)}
        mutable = {str(v): is_2_acyclic_at(sp, v) for v in sp.vertices}
        return {
            "id": self.sid,
            "history": list(self.history),
            "species": sp.to_json(),
            "B": exchange_matrix(sp).to_json() if _locally_free(sp) else None,
            "fg": fg,
            "mutable": mutable,
            "layout": self.layout(),
        }


def _locally_free(sp: GroupSpecies) -> bool:
    from .species import is_locally_free

    return is_locally_free(sp)[0]


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, SessionState] = {}
        self._counter = 0

    def create(self, gsp: GSP) -> SessionState:
        with self._lock:
            self._counter += 1
            sid = f"s{self._counter}"
            st = SessionState(sid, gsp)
            self._sessions[sid] = st
            return st

    def get(self, sid: str) -> SessionState | None:
        with self._lock:
            return self._sessions.get(sid)


def session_create_payload(store: SessionStore, body: dict) -> dict:
    if "species" in body:
        sp = GroupSpecies.from_json(body["species"])
    elif "matrix" in body:
        sp = species_from_matrix(ExchangeMatrix.from_json(body["matrix"]))
    else:
        raise ValueError("body needs 'species' or 'matrix'")
    n = int(body.get("truncation", 6))
    gsp = GSP.make(sp, None, n)
    exchange_matrix(sp)  # sessions require a locally free species
    st = store.create(gsp)
    return st.to_json()


def session_mutate(st: SessionState, k) -> dict:
    with st.lock:
        g = st.current()
        if not is_2_acyclic_at(g.species, k):
            raise NotTwoAcyclicAtK(f"vertex {k} has a 2-cycle through it")
        st.chain.append(mutate(g, k).reduced)
        st.history.append(k)
        return st.to_json()


def session_undo(st: SessionState) -> dict:
    with st.lock:
        if st.history:
            st.history.pop()
            st.chain.pop()
        return st.to_json()


def make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _send(self, code: int, obj):
            payload = json.dumps(obj, sort_keys=True).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(payload)

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if not length:
                return {}
            return json.loads(self.rfile.read(length).decode())

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()

        def do_GET(self):
            parts = [p for p in self.path.split("/") if p]
            if len(parts) == 3 and parts[:2] == ["api", "sessions"]:
                st = store.get(parts[2])
                if st is None:
                    self._send(404, {"error": "UnknownSession", "witness": parts[2]})
                    return
                with st.lock:
                    self._send(200, st.to_json())
                return
            self._send(404, {"error": "NotFound", "witness": self.path})

        def do_POST(self):
            parts = [p for p in self.path.split("/") if p]
            try:
                body = self._body()
                if parts == ["api", "sessions"]:
                    self._send(200, session_create_payload(store, body))
                    return
                if len(parts) == 4 and parts[:2] == ["api", "sessions"]:
                    st = store.get(parts[2])
                    if st is None:
                        self._send(404, {"error": "UnknownSession", "witness": parts[2]})
                        return
                    if parts[3] == "mutate":
                        k = body.get("k")
                        sp = st.current().species
                        if k not in sp.vertices and str(k) in map(str, sp.vertices):
                            k = next(v for v in sp.vertices if str(v) == str(k))
                        self._send(200, session_mutate(st, k))
                        return
                    if parts[3] == "undo":
                        self._send(200, session_undo(st))
                        return
                self._send(404, {"error": "NotFound", "witness": self.path})
            except (NotTwoAcyclicAtK, MutationUndefined) as e:
                self._send(400, {"error": type(e).__name__, "witness": str(e)})
            except (ValueError, KeyError) as e:
                self._send(400, {"error": type(e).__name__, "witness": str(e)})

    return Handler


def make_server(port: int = 8137, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    store = SessionStore()
    httpd = ThreadingHTTPServer((host, port), make_handler(store))
    return httpd


def serve(port: int = 8137, host: str = "127.0.0.1") -> None:
    httpd = make_server(port, host)
    print(json.dumps({"serving": f"http://{host}:{httpd.server_address[1]}/api/sessions"}), flush=True)
    try:
        httpd.serve_forever()
    finally:
        httpd.server_close()
