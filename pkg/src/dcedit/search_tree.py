"""Bounded-search-tree solvers with node accounting.

Both solvers follow the same loop: accept when the budget is non-negative
and every constraint holds, reject when the budget is exhausted and a
violation remains, otherwise branch on a small hitting set of every
possible repair.  Branch sets are chosen greedily so that if no branch
element is edited, the surviving weight around the violation pins its
value above every reachable target — that keeps the child count within
the advertised branching factors (2r+5 / 3r+6, r+3 for vertex-deletion
only) while staying complete.

Edge weights bring one wrinkle: the branch "reduce this edge's weight by
one" can leave an edge partially reduced, a state no legal edit set
realises (edge deletion is all-or-nothing at full weight).  Reduced edges
are therefore tracked as *pending* and a state only accepts once its
pending edges are gone — fully reduced, deleted outright, or removed with
an endpoint; the reported witness contains whole deletions only and is
re-priced against the input graph.  Weight-1 edges skip the reduction
branch entirely (reducing them is deleting them).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .graphs import WeightedGraph, edge_key
from .kernelize import kernel_bound, kernelize
from .oracle import (
    ORACLE_MAX_BUDGET,
    ORACLE_MAX_VERTICES,
    brute_force_solve,
)
from .problems import (
    EDEL,
    VDEL,
    WEDCE,
    WERE,
    WSRE,
    EditScript,
    ProblemInstance,
    canonical_steps,
    check_constraints,
)


@dataclass(frozen=True)
class SolveReport:
    answer: bool
    witness: Optional[EditScript]
    nodes_visited: int
    tree_bound: Optional[int]


class KernelTooLargeError(RuntimeError):
    """The reduced instance exceeds the exhaustive phase's envelope."""


def tr(b: int, k: int) -> int:
    """Node count of a complete depth-k tree with branching factor b."""
    if b < 2:
        raise ValueError("tr needs branching factor b >= 2")
    if k < 0:
        raise ValueError("tr needs k >= 0")
    return (b ** (k + 1) - 1) // (b - 1)


def _wdeg(g: WeightedGraph) -> Dict:
    return {v: sum(g.edge_weight(v, u) for u in g.neighbors(v)) for v in g.vertices()}


def _max_allowed_at_most(allowed: frozenset, d: int) -> Optional[int]:
    below = [s for s in allowed if s <= d]
    return max(below) if below else None


# -- WEDCE ------------------------------------------------------------------


def solve_wedce_bst(inst: ProblemInstance) -> SolveReport:
    """Five-step branching for WEDCE with ops within {vdel, edel}."""
    if inst.kind != WEDCE:
        raise ValueError("solve_wedce_bst expects a WEDCE instance")
    if not inst.ops or not inst.ops <= {VDEL, EDEL}:
        raise ValueError("WEDCE search tree covers non-empty ops within {vdel, edel}")
    allow_v = VDEL in inst.ops
    allow_e = EDEL in inst.ops
    cs = inst.constraints
    nodes = 0
    hit: List[Optional[Tuple]] = [None]

    def recurse(g: WeightedGraph, k: int, pending: frozenset, steps: tuple) -> bool:
        nonlocal nodes
        nodes += 1
        if k < 0:
            return False
        wd = _wdeg(g)
        violating = None
        for (u, v) in g.edges():
            if wd[u] + wd[v] not in cs.delta_of_edge(u, v):
                violating = (u, v)
                break
        if violating is None:
            if not pending:
                hit[0] = steps
                return True
            # forced: keep reducing the least pending edge
            e = min(pending)
            if k == 0:
                return False
            w = g.edge_weight(*e)
            if w == 1:
                return recurse(g.delete_edge(*e), k - 1, pending - {e},
                               steps + ((EDEL,) + e,))
            return recurse(g.set_edge_weight(*e, w - 1), k - 1, pending, steps)
        if k <= 0:
            return False
        u, v = violating
        d = wd[u] + wd[v]
        t = _max_allowed_at_most(cs.delta_of_edge(u, v), d)
        children: List[Tuple[str, tuple]] = []
        if allow_v:
            children.append((VDEL, (u,)))
            children.append((VDEL, (v,)))
        if allow_e:
            children.append((EDEL, (u, v)))
        if t is not None:
            others = sorted((g.neighbors(u) | g.neighbors(v)) - {u, v})
            guarantee = 2 * g.edge_weight(u, v)
            m_sel: List = []
            chosen: List[tuple] = []
            for x in others:
                if guarantee >= t + 1:
                    break
                cands = []
                if g.has_edge(x, u):
                    cands.append((g.edge_weight(x, u), edge_key(x, u)))
                if g.has_edge(x, v):
                    cands.append((g.edge_weight(x, v), edge_key(x, v)))
                w_best, e_best = max(cands, key=lambda p: (p[0], p[1]))
                m_sel.append(x)
                chosen.append(e_best)
                guarantee += w_best
            if guarantee < t + 1:
                # small neighbourhood: branch on everything around uv
                m_sel = others
                chosen = sorted(
                    e for x in others for e in (edge_key(x, u), edge_key(x, v))
                    if g.has_edge(*e)
                )
            if allow_v:
                children.extend((VDEL, (x,)) for x in m_sel)
            if allow_e:
                children.extend(("reduce", e) for e in chosen)
        for op, ref in children:
            if op == VDEL:
                (x,) = ref
                cost = g.vertex_weight(x)
                if cost > k:
                    continue
                drop = {edge_key(x, y) for y in g.neighbors(x)}
                if recurse(g.delete_vertex(x), k - cost, pending - drop,
                           steps + ((VDEL, x),)):
                    return True
            elif op == EDEL:
                cost = g.edge_weight(*ref)
                if cost > k:
                    continue
                if recurse(g.delete_edge(*ref), k - cost, pending - {ref},
                           steps + ((EDEL,) + ref,)):
                    return True
            else:  # reduce by one
                w = g.edge_weight(*ref)
                if w == 1:
                    if recurse(g.delete_edge(*ref), k - 1, pending - {ref},
                               steps + ((EDEL,) + ref,)):
                        return True
                else:
                    if recurse(g.set_edge_weight(*ref, w - 1), k - 1,
                               pending | {ref}, steps):
                        return True
        return False

    answer = recurse(inst.graph, inst.k, frozenset(), ())
    bound = tr(inst.constraints.r + 3 if not allow_e else 2 * inst.constraints.r + 5,
               max(inst.k, 0))
    witness = None
    if answer:
        witness = EditScript.build(inst.graph, canonical_steps(hit[0]))
    return SolveReport(answer, witness, nodes, bound)


# -- WERE -------------------------------------------------------------------


def solve_were_bst(inst: ProblemInstance) -> SolveReport:
    """Branching solver for WERE with ops within {vdel, edel}.

    At every node, vertices whose weighted degree sits below their entire
    delta list are deleted outright first (degrees cannot grow, so they
    can only be deleted); then the lexicographically least violator — a
    degree violation if any, else an edge violating nu — drives the branch.
    """
    if inst.kind != WERE:
        raise ValueError("solve_were_bst expects a WERE instance")
    if not inst.ops or not inst.ops <= {VDEL, EDEL}:
        raise ValueError("WERE search tree covers non-empty ops within {vdel, edel}")
    allow_v = VDEL in inst.ops
    allow_e = EDEL in inst.ops
    cs = inst.constraints
    nodes = 0
    hit: List[Optional[Tuple]] = [None]

    def recurse(g: WeightedGraph, k: int, pending: frozenset, steps: tuple) -> bool:
        nonlocal nodes
        nodes += 1
        if k < 0:
            return False
        # forced deletions: degree below every allowed value
        while True:
            wd = _wdeg(g)
            doomed = next(
                (v for v in g.vertices() if wd[v] < min(cs.delta_of_vertex(v))),
                None,
            )
            if doomed is None:
                break
            if not allow_v:
                return False
            k -= g.vertex_weight(doomed)
            if k < 0:
                return False
            drop = {edge_key(doomed, y) for y in g.neighbors(doomed)}
            pending = pending - drop
            steps = steps + ((VDEL, doomed),)
            g = g.delete_vertex(doomed)
        deg_bad = next((v for v in g.vertices() if wd[v] not in cs.delta_of_vertex(v)),
                       None)
        nu_bad = None
        if deg_bad is None:
            for (a, b) in g.edges():
                if len(g.neighbors(a) & g.neighbors(b)) not in cs.nu_of(a, b):
                    nu_bad = (a, b)
                    break
        if deg_bad is None and nu_bad is None:
            if not pending:
                hit[0] = steps
                return True
            e = min(pending)
            if k == 0:
                return False
            w = g.edge_weight(*e)
            if w == 1:
                return recurse(g.delete_edge(*e), k - 1, pending - {e},
                               steps + ((EDEL,) + e,))
            return recurse(g.set_edge_weight(*e, w - 1), k - 1, pending, steps)
        if k <= 0:
            return False
        children: List[Tuple[str, tuple]] = []
        if deg_bad is not None:
            v = deg_bad
            t = _max_allowed_at_most(cs.delta_of_vertex(v), wd[v])
            # t exists: degrees below the whole list were deleted above
            if allow_v:
                children.append((VDEL, (v,)))
            guarantee = 0
            m_sel = []
            for x in sorted(g.neighbors(v)):
                if guarantee >= t + 1:
                    break
                m_sel.append(x)
                guarantee += g.edge_weight(v, x)
            for x in m_sel:
                if allow_v:
                    children.append((VDEL, (x,)))
                if allow_e:
                    children.append(("reduce", edge_key(v, x)))
        else:
            a, b = nu_bad
            count = len(g.neighbors(a) & g.neighbors(b))
            t = _max_allowed_at_most(cs.nu_of(a, b), count)
            if allow_v:
                children.append((VDEL, (a,)))
                children.append((VDEL, (b,)))
            if allow_e:
                children.append((EDEL, edge_key(a, b)))
            if t is not None:
                # common counts are unweighted, so each survivor counts one:
                # keeping t+1 of them pins the count above every target
                for x in sorted(g.neighbors(a) & g.neighbors(b))[: t + 1]:
                    if allow_v:
                        children.append((VDEL, (x,)))
                    if allow_e:
                        children.append((EDEL, edge_key(x, a)))
                        children.append((EDEL, edge_key(x, b)))
        for op, ref in children:
            if op == VDEL:
                (x,) = ref
                cost = g.vertex_weight(x)
                if cost > k:
                    continue
                drop = {edge_key(x, y) for y in g.neighbors(x)}
                if recurse(g.delete_vertex(x), k - cost, pending - drop,
                           steps + ((VDEL, x),)):
                    return True
            elif op == EDEL:
                cost = g.edge_weight(*ref)
                if cost > k:
                    continue
                if recurse(g.delete_edge(*ref), k - cost, pending - {ref},
                           steps + ((EDEL,) + ref,)):
                    return True
            else:
                w = g.edge_weight(*ref)
                if w == 1:
                    if recurse(g.delete_edge(*ref), k - 1, pending - {ref},
                               steps + ((EDEL,) + ref,)):
                        return True
                else:
                    if recurse(g.set_edge_weight(*ref, w - 1), k - 1,
                               pending | {ref}, steps):
                        return True
        return False

    answer = recurse(inst.graph, inst.k, frozenset(), ())
    bound = tr(inst.constraints.r + 3 if not allow_e else 3 * inst.constraints.r + 6,
               max(inst.k, 0))
    witness = None
    if answer:
        witness = EditScript.build(inst.graph, canonical_steps(hit[0]))
    return SolveReport(answer, witness, nodes, bound)


# -- WSRE: kernel + exhaustive phase ----------------------------------------


def solve_wsre(inst: ProblemInstance) -> SolveReport:
    """Kernelize, solve the kernel exhaustively, lift the witness when the
    trace used only deletions (rules 1 and 2); structural rewrites keep the
    answer but drop the witness."""
    if inst.kind != WSRE:
        raise ValueError("solve_wsre expects a WSRE instance")
    if VDEL not in inst.ops or not inst.ops <= {VDEL, EDEL}:
        raise ValueError("solve_wsre needs vdel in ops and ops within {vdel, edel}")
    reduced, trace = kernelize(inst)
    if reduced.graph.n > ORACLE_MAX_VERTICES or reduced.k > ORACLE_MAX_BUDGET:
        raise KernelTooLargeError(
            f"kernel too large for exact phase: n={reduced.graph.n}, "
            f"k={reduced.k} (guaranteed bound "
            f"{kernel_bound(inst.kind, inst.ops, max(inst.k, 0), inst.constraints.r)})"
        )
    res = brute_force_solve(reduced)
    if not res.answer:
        return SolveReport(False, None, 0, None)
    liftable = all(s.rule in ("rr1", "rr2") for s in trace.steps)
    witness = None
    if liftable:
        extra = tuple(
            (VDEL, s.affected[0]) for s in trace.steps if s.rule == "rr1"
        )
        witness = EditScript.build(
            inst.graph, canonical_steps(extra + res.witness.steps)
        )
    return SolveReport(True, witness, 0, None)


# -- dispatch ---------------------------------------------------------------


def solve(inst: ProblemInstance) -> SolveReport:
    """Best available solver for the instance; exhaustive search where no
    dedicated algorithm exists (vertex-degree lists, or any ops with eadd)."""
    in_del_ops = inst.ops <= {VDEL, EDEL}
    if inst.kind == WEDCE and in_del_ops:
        return solve_wedce_bst(inst)
    if inst.kind == WERE and in_del_ops:
        return solve_were_bst(inst)
    if inst.kind == WSRE and VDEL in inst.ops and in_del_ops:
        try:
            return solve_wsre(inst)
        except ValueError:
            pass  # not a *-variant: fall through to the oracle
    res = brute_force_solve(inst)
    return SolveReport(res.answer, res.witness, 0, None)
