#!/usr/bin/env python3
"""Census of regular substructure over all small labeled graphs.

For each n up to the cap, counts how many of the 2^C(n,2) labeled graphs
contain a nonempty r-regular induced subgraph, contain an r-regular
subgraph when edge deletions are free, and how many are edge-degree
regular outright (every edge's endpoint-degree sum equal).
"""

import argparse

from dcedit.graphs import weighted_edge_degree
from dcedit.oracle import enumerate_labeled_graphs
from dcedit.treewidth import greedy_decomposition, solve_induced_regular, solve_regular_subgraph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5, choices=range(2, 7),
                    help="largest vertex count to enumerate (default 5)")
    ap.add_argument("--max-r", type=int, default=4)
    args = ap.parse_args()

    rs = range(args.max_r + 1)
    header = (f"{'n':>2} {'graphs':>7} "
              + " ".join(f"{'ind r=' + str(r):>9}" for r in rs) + " "
              + " ".join(f"{'sub r=' + str(r):>9}" for r in rs)
              + f" {'edge-reg':>9}")
    print(header)
    for n in range(2, args.max_n + 1):
        total = 0
        induced = dict.fromkeys(rs, 0)
        subgraph = dict.fromkeys(rs, 0)
        edge_regular = 0
        for g in enumerate_labeled_graphs(n):
            total += 1
            td = greedy_decomposition(g)
            for r in rs:
                induced[r] += solve_induced_regular(g, r, td)
                subgraph[r] += solve_regular_subgraph(g, r, td)
            degrees = {weighted_edge_degree(g, *e) for e in g.edges()}
            edge_regular += bool(g.edges()) and len(degrees) == 1
        row = (f"{n:>2} {total:>7} "
               + " ".join(f"{induced[r]:>9}" for r in rs) + " "
               + " ".join(f"{subgraph[r]:>9}" for r in rs)
               + f" {edge_regular:>9}")
        print(row)


if __name__ == "__main__":
    main()
