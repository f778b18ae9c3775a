#!/usr/bin/env python3
"""Walk the mutation class of a species and report what the ball contains.

Example:
    python scripts/explore_mutation_class.py --matrix '0,-1,0;1,0,-1;0,2,0' --radius 4
"""

import argparse
import json

from clusterspecies.exchange import ExchangeMatrix
from clusterspecies.mutation import GSP, mutate_gsp
from clusterspecies.potential import is_2_acyclic
from clusterspecies.seeds import compute_fg_state
from clusterspecies.species import exchange_matrix, species_from_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--matrix", required=True, help="rows like '0,-1;1,0'")
    ap.add_argument("--radius", type=int, default=4)
    ap.add_argument("--truncation", type=int, default=6)
    args = ap.parse_args()

    rows = [[int(x) for x in r.split(",")] for r in args.matrix.split(";")]
    b0 = ExchangeMatrix.from_rows(rows)
    sp = species_from_matrix(b0)
    g0 = GSP.make(sp, N=args.truncation)

    seen_b = {b0.rows: ()}
    seen_g = {}
    frontier = [(g0, ())]
    for _ in range(args.radius):
        nxt = []
        for g, hist in frontier:
            for k in g.species.vertices:
                if hist and hist[-1] == k:
                    continue
                if not is_2_acyclic(g.species):
                    continue
                g2 = mutate_gsp(g, k)
                h2 = hist + (k,)
                b2 = exchange_matrix(g2.species)
                if b2.rows not in seen_b:
                    seen_b[b2.rows] = h2
                state = compute_fg_state(b0, tuple(reversed(h2)))
                for lab in b0.labels:
                    f, gv = state.pair(lab)
                    seen_g.setdefault(gv, len(f.terms))
                nxt.append((g2, h2))
        frontier = nxt

    print(json.dumps({
        "initial_matrix": [list(r) for r in b0.rows],
        "radius": args.radius,
        "distinct_b_matrices": len(seen_b),
        "distinct_g_vectors": len(seen_g),
        "g_vectors": sorted([list(g) for g in seen_g], key=str),
    }, indent=2))


if __name__ == "__main__":
    main()
