"""Command-line interface: exact species/seed computations over JSON files."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .counterexample import counterexample_search
from .exchange import ExchangeMatrix, find_skew_symmetrizer, mutate_matrix
from .mutation import GSP, mutate, probe_nondegeneracy
from .polys import IntPolynomial
from .potential import Potential
from .reps import DecoratedRep, f_polynomial_reduced, g_vector, mutate_rep, reduced_vector
from .seeds import compute_fg_state
from .species import GroupSpecies, exchange_matrix, species_from_matrix
from .verify import SUITES, verify_conjectures


class CliError(Exception):
    def __init__(self, code, witness=None):
        super().__init__(code)
        self.code = code
        self.witness = witness


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _parse_matrix(args) -> ExchangeMatrix:
    """Accept a file path, inline JSON, or inline rows like '0,-1;1,0'."""
    src = args.matrix
    if src.lstrip().startswith("{"):
        return ExchangeMatrix.from_json(json.loads(src))
    if ";" in src:
        rows = [[int(x) for x in row.split(",")] for row in src.split(";")]
        return ExchangeMatrix.from_rows(rows)
    return ExchangeMatrix.from_json(_load_json(src))


def _parse_species(args) -> GroupSpecies:
    return GroupSpecies.from_json(_load_json(args.species))


def _parse_gsp(args) -> GSP:
    sp = _parse_species(args)
    n = getattr(args, "truncation", None) or 6
    g = GSP.make(sp, None, n)
    if getattr(args, "potential", None):
        data = _load_json(args.potential)
        byname = {a.name: a for a in g.arrows}
        terms = {}
        for t in data["terms"]:
            path = tuple(byname[x] for x in t["cycle"])
            terms[path] = Fraction(t["coeff"])
        g = GSP(sp, g.arrows, Potential(n, terms), n)
    return g


def _seq(arg):
    if arg in ("-", ""):
        return ()
    return tuple(int(x) if x.lstrip("-").isdigit() else x for x in arg.split(","))


def _emit(obj, args):
    if args.format == "pretty":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(json.dumps(obj, sort_keys=True))


def _poly_json(p: IntPolynomial):
    return p.to_json()


def cmd_b_matrix(args):
    sp = _parse_species(args)
    return exchange_matrix(sp).to_json()


def cmd_species_from_matrix(args):
    b = _parse_matrix(args)
    d = tuple(int(x) for x in args.symmetrizer.split(",")) if args.symmetrizer else None
    sp = species_from_matrix(b, d)
    return sp.to_json()


def cmd_mutate(args):
    g = _parse_gsp(args)
    rep = mutate(g, _seq(str(args.at))[0])
    return rep.to_json()


def cmd_fg(args):
    b = _parse_matrix(args)
    state = compute_fg_state(b, _seq(args.seq))
    k = _seq(str(args.vertex))[0]
    f, g = state.pair(k)
    return {"vertex": k, "seq": list(_seq(args.seq)), "F": _poly_json(f), "g": list(g)}


def cmd_rep_mutate(args):
    g = _parse_gsp(args)
    rep = DecoratedRep.from_json(g, _load_json(args.rep))
    out, _report = mutate_rep(rep, _seq(str(args.at))[0])
    return out.to_json()


def cmd_verify(args):
    b = _parse_matrix(args)
    suites = SUITES if args.suite == "all" else tuple(args.suite.split(","))
    rep = verify_conjectures(b, args.max_len, suites)
    return rep.to_json()


def cmd_example_c3(args):
    from .species import c3_species

    sp = c3_species()
    b = exchange_matrix(sp)
    state = compute_fg_state(b, (2, 1, 3))
    f, g = state.pair(3)
    gsp = GSP.make(sp, None, 6)
    from .reps import mutate_gspdr_sequence
    from .species import CharacterIndex

    rep = mutate_gspdr_sequence(gsp, {CharacterIndex(3, (1,)): 1}, (2, 1, 3))
    return {
        "species": sp.to_json(),
        "b_matrix": b.to_json(),
        "symmetrizer": list(find_skew_symmetrizer(b)),
        "fg_seq_2_1_3_vertex_3": {"F": _poly_json(f), "g": list(g)},
        "final_rep_dims": {cv.key(): d for cv, d in sorted(rep.dims.items()) if d},
        "final_rep_g_reduced": list(reduced_vector(rep.gsp.species, g_vector(rep))),
        "final_rep_F_reduced": _poly_json(f_polynomial_reduced(rep)),
    }


def cmd_counterexample(args):
    out = []
    for m in (int(x) for x in args.m.split(",")):
        out.append(counterexample_search(m, control=args.control).to_json())
    return {"reports": out}


def cmd_probe(args):
    g = _parse_gsp(args)
    rep = probe_nondegeneracy(g, args.max_len, args.trials, seed=args.seed)
    return rep.to_json()


def cmd_serve(args):
    from .server import serve

    serve(args.port, host=args.host)
    return None


def build_parser():
    p = argparse.ArgumentParser(prog="clusterspecies", description=__doc__)
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("b-matrix", help="exchange matrix of a species")
    q.add_argument("--species", required=True)
    q.set_defaults(fn=cmd_b_matrix)

    q = sub.add_parser("species-from-matrix", help="locally free species realizing a matrix")
    q.add_argument("--matrix", required=True)
    q.add_argument("--symmetrizer", default=None, help="comma-separated positive integers")
    q.set_defaults(fn=cmd_species_from_matrix)

    q = sub.add_parser("mutate", help="mutate a GSP at a vertex")
    q.add_argument("--species", required=True)
    q.add_argument("--potential", default=None)
    q.add_argument("--truncation", type=int, default=6)
    q.add_argument("--at", required=True)
    q.set_defaults(fn=cmd_mutate)

    q = sub.add_parser("fg", help="F-polynomial and g-vector of a sequence")
    q.add_argument("--matrix", required=True)
    q.add_argument("--seq", required=True, help="comma-separated vertices, '-' for empty")
    q.add_argument("--vertex", required=True)
    q.set_defaults(fn=cmd_fg)

    q = sub.add_parser("rep-mutate", help="mutate a decorated representation")
    q.add_argument("--species", required=True)
    q.add_argument("--potential", default=None)
    q.add_argument("--truncation", type=int, default=6)
    q.add_argument("--rep", required=True)
    q.add_argument("--at", required=True)
    q.set_defaults(fn=cmd_rep_mutate)

    q = sub.add_parser("verify", help="conjecture suites on a mutation ball")
    q.add_argument("--matrix", required=True)
    q.add_argument("--suite", default="all")
    q.add_argument("--max-len", type=int, default=4)
    q.set_defaults(fn=cmd_verify)

    q = sub.add_parser("example-c3", help="golden bundle for the worked example")
    q.set_defaults(fn=cmd_example_c3)

    q = sub.add_parser("counterexample", help="obstruction-matrix instance search")
    q.add_argument("--m", default="1,2")
    q.add_argument("--control", action="store_true")
    q.set_defaults(fn=cmd_counterexample)

    q = sub.add_parser("probe", help="non-degeneracy probing with sampled potentials")
    q.add_argument("--species", required=True)
    q.add_argument("--potential", default=None)
    q.add_argument("--truncation", type=int, default=6)
    q.add_argument("--max-len", type=int, default=2)
    q.add_argument("--trials", type=int, default=3)
    q.set_defaults(fn=cmd_probe)

    q = sub.add_parser("serve", help="JSON-over-HTTP session service")
    q.add_argument("--port", type=int, default=8137)
    q.add_argument("--host", default="127.0.0.1")
    q.set_defaults(fn=cmd_serve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.fn(args)
    except (ValueError, KeyError, OSError) as e:
        err = {"error": type(e).__name__, "witness": str(e)}
        print(json.dumps(err), file=sys.stderr)
        return 1
    if out is not None:
        _emit(out, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
