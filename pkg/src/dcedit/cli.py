"""Command-line front end.

Subcommands: solve, kernelize, verify, oracle, gen, tw.  Answers go to
stdout in a fixed, byte-stable layout (canonical edit order, sorted ids);
diagnostics, kernel traces and --stats counters go to stderr.  Exit codes:
0 = yes / verified, 1 = no / rejected, 2 = any error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .graphs import WeightedGraph, complete, cycle, petersen, random_graph
from .instance_io import (
    ParseError,
    parse_decomposition,
    parse_instance,
    parse_script,
    serialize_instance,
    serialize_script,
)
from .kernelize import kernelize
from .oracle import ORACLE_MAX_BUDGET, ORACLE_MAX_VERTICES, brute_force_solve
from .problems import (
    EDEL,
    KINDS,
    VDEL,
    WDCE,
    WEDCE,
    WERE,
    WSRE,
    ConstraintSet,
    EditScript,
    ProblemInstance,
    apply_edit_script,
    canonical_steps,
    check_constraints,
)
from .search_tree import solve
from .treewidth import solve_induced_regular, solve_regular_subgraph, solve_with_addition

GEN_FAMILIES = ("complete", "cycle", "petersen", "gnp")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="dcedit",
                                  description="degree-constraint edit solvers")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance and print an edit script")
    p.add_argument("file")
    p.add_argument("--stats", action="store_true",
                   help="report nodes visited and the tree-size bound on stderr")

    p = sub.add_parser("kernelize", help="reduce an instance; trace on stderr")
    p.add_argument("file")

    p = sub.add_parser("verify", help="check an edit script against an instance")
    p.add_argument("file")
    p.add_argument("script")

    p = sub.add_parser("oracle", help="exhaustive ground-truth answer")
    p.add_argument("file")

    p = sub.add_parser("gen", help="emit a generated instance file")
    p.add_argument("family", choices=GEN_FAMILIES)
    p.add_argument("params", nargs="*",
                   help="complete/cycle: n; gnp: n p; petersen: none")
    p.add_argument("--kind", choices=sorted(KINDS), default=WDCE)
    p.add_argument("--ops", default="vdel,edel", help="comma-separated operations")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("tw", help="regular-subgraph existence via treewidth DP")
    p.add_argument("file")
    p.add_argument("--td", help="tree decomposition file (default: greedy heuristic)")
    p.add_argument("--mode", choices=("induced", "subgraph", "addition"),
                   default="induced")
    p.add_argument("-r", type=int, required=True)
    return top


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _print_answer(witness: Optional[EditScript]) -> None:
    print(f"YES cost={witness.cost}")
    sys.stdout.write(serialize_script(witness))


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.file))
    rep = solve(inst)
    if rep.answer:
        witness = rep.witness
        if witness is None and inst.graph.n <= ORACLE_MAX_VERTICES \
                and inst.k <= ORACLE_MAX_BUDGET:
            witness = brute_force_solve(inst).witness
        if witness is not None:
            _print_answer(witness)
        else:
            print(f"YES cost={inst.k}")
            print("witness unavailable: kernel rules rewrote the instance; "
                  "the printed cost is the budget upper bound", file=sys.stderr)
        code = 0
    else:
        print("NO")
        code = 1
    if args.stats:
        print(f"nodes_visited={rep.nodes_visited}", file=sys.stderr)
        bound = rep.tree_bound if rep.tree_bound is not None else "-"
        print(f"tree_bound={bound}", file=sys.stderr)
    return code


def _cmd_kernelize(args) -> int:
    inst = parse_instance(_read(args.file))
    reduced, trace = kernelize(inst)
    sys.stdout.write(serialize_instance(reduced))
    for step in trace.steps:
        ids = ",".join(str(x) for x in sorted(step.affected))
        print(f"rule={step.rule} affected={ids} k_delta={step.k_delta}",
              file=sys.stderr)
    print(f"kernel n={reduced.graph.n} m={reduced.graph.m} k={reduced.k} "
          f"rules_fired={len(trace.steps)}", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    inst = parse_instance(_read(args.file))
    steps = parse_script(_read(args.script))
    try:
        script = EditScript.build(inst.graph, canonical_steps(steps))
    except ValueError as exc:
        print(f"INVALID: {exc}")
        return 1
    if script.cost > inst.k:
        print(f"INVALID: cost {script.cost} exceeds budget {inst.k}")
        return 1
    edited = apply_edit_script(inst.graph, script)
    if not check_constraints(inst, edited):
        print("INVALID: constraints unsatisfied after applying the script")
        return 1
    print(f"OK cost={script.cost}")
    return 0


def _cmd_oracle(args) -> int:
    inst = parse_instance(_read(args.file))
    res = brute_force_solve(inst)
    if res.answer:
        _print_answer(res.witness)
        return 0
    print("NO")
    return 1


def _gen_graph(args) -> WeightedGraph:
    p = args.params
    if args.family == "petersen":
        if p:
            raise ValueError("petersen takes no parameters")
        return petersen()
    if args.family in ("complete", "cycle"):
        if len(p) != 1:
            raise ValueError(f"{args.family} takes one parameter: n")
        n = int(p[0])
        return complete(n) if args.family == "complete" else cycle(n)
    if len(p) != 2:
        raise ValueError("gnp takes two parameters: n p")
    return random_graph(int(p[0]), float(p[1]), seed=args.seed)


def _cmd_gen(args) -> int:
    g = _gen_graph(args)
    kind = args.kind
    ops = frozenset(s for s in args.ops.split(",") if s)
    wdeg = {v: sum(g.edge_weight(v, u) for u in g.neighbors(v)) for v in g.vertices()}
    nu_counts = {e: len(g.neighbors(e[0]) & g.neighbors(e[1])) for e in g.edges()}
    xi_counts = {pair: len(g.neighbors(pair[0]) & g.neighbors(pair[1]))
                 for pair in g.non_adjacent_pairs()}
    if kind == WEDCE:
        de = {e: frozenset({wdeg[e[0]] + wdeg[e[1]]}) for e in g.edges()}
        r = max((max(s) for s in de.values()), default=0)
        cs = ConstraintSet(r=r, delta_e=de)
    else:
        dv = {v: frozenset({wdeg[v]}) for v in g.vertices()}
        r = max(wdeg.values(), default=0)
        lam = mu = None
        nu = xi = None
        nu_default = xi_default = None
        if kind in (WERE, WSRE):
            lam = max(nu_counts.values(), default=0)
            nu = {e: frozenset({c}) for e, c in nu_counts.items()}
            nu_default = frozenset({0})
        if kind == WSRE:
            mu = max(xi_counts.values(), default=0)
            xi = {pair: frozenset({c}) for pair, c in xi_counts.items()}
            xi_default = frozenset({0})
        cs = ConstraintSet(r=r, lam=lam, mu=mu, delta_v=dv, nu=nu, xi=xi,
                           nu_default=nu_default, xi_default=xi_default)
    inst = ProblemInstance(kind=kind, graph=g, constraints=cs, ops=ops, k=args.k)
    sys.stdout.write(serialize_instance(inst))
    return 0


def _cmd_tw(args) -> int:
    if args.r < 0:
        raise ValueError("r must be non-negative")
    g = parse_instance(_read(args.file)).graph
    if args.mode == "addition":
        answer = solve_with_addition(g, args.r)
    else:
        td = parse_decomposition(_read(args.td)) if args.td else None
        fn = solve_induced_regular if args.mode == "induced" else solve_regular_subgraph
        answer = fn(g, args.r, td)
    print("YES" if answer else "NO")
    return 0 if answer else 1


_COMMANDS = {
    "solve": _cmd_solve,
    "kernelize": _cmd_kernelize,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "tw": _cmd_tw,
}


def run_cli(argv: List[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # malformed input must never escape as a traceback
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
