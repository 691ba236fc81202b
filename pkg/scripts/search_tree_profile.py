#!/usr/bin/env python3
"""Visited-node profile of the branching solvers against the tr() ceiling.

Generates seeded random instances per (kind, ops, r, k) cell, solves each
with the bounded search tree, and reports how much of the worst-case node
budget the runs actually touch.  Useful for spotting branching regressions:
the `used%` column should stay far below 100.
"""

import argparse
import random
import statistics

from dcedit.graphs import random_graph
from dcedit.problems import EDEL, VDEL, WEDCE, WERE, ConstraintSet, ProblemInstance
from dcedit.search_tree import solve


def uniform(kind, g, r, k, ops, lam=None):
    if kind == WEDCE:
        cs = ConstraintSet(r=r, delta_e={e: {r} for e in g.edges()})
    else:
        cs = ConstraintSet(r=r, lam=lam,
                           delta_v={v: {r} for v in g.vertices()},
                           nu_default={lam})
    return ProblemInstance(kind=kind, graph=g, constraints=cs,
                           ops=frozenset(ops), k=k)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200,
                    help="instances per table row (default 200)")
    ap.add_argument("--n", type=int, default=6, help="vertices per instance")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cells = [
        (WEDCE, {VDEL, EDEL}, "vdel+edel"),
        (WEDCE, {VDEL}, "vdel"),
        (WERE, {VDEL, EDEL}, "vdel+edel"),
    ]
    print(f"{'kind':<6} {'ops':<10} {'r':>2} {'k':>2} "
          f"{'bound':>7} {'max':>6} {'mean':>8} {'used%':>7}")
    for kind, ops, label in cells:
        for r in (1, 2):
            for k in (1, 2, 3):
                rng = random.Random(f"{args.seed}/{kind}/{label}/{r}/{k}")
                visited = []
                bound = None
                for _ in range(args.trials):
                    g = random_graph(args.n, rng.uniform(0.2, 0.7),
                                     seed=rng.randrange(10 ** 6))
                    lam = rng.randint(0, r) if kind == WERE else None
                    rep = solve(uniform(kind, g, r, k, ops, lam=lam))
                    visited.append(rep.nodes_visited)
                    bound = rep.tree_bound
                used = 100.0 * max(visited) / bound
                print(f"{kind:<6} {label:<10} {r:>2} {k:>2} {bound:>7} "
                      f"{max(visited):>6} {statistics.mean(visited):>8.1f} "
                      f"{used:>6.1f}%")


if __name__ == "__main__":
    main()
