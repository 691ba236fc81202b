"""Problem instances: constraint sets, edit scripts, and the four checkers.

The four problem kinds share one instance model:

* ``WDCE``  — per-vertex degree lists: every vertex's weighted degree must
  land in delta(v).
* ``WEDCE`` — per-edge lists on the weighted edge-degree d(uv) = d(u)+d(v).
* ``WERE``  — vertex lists plus a common-neighbour list nu(u,v) on edges.
* ``WSRE``  — WERE plus a list xi(u,v) on non-adjacent pairs.

Allowed operations are vertex deletion, edge deletion and edge addition
(``vdel``/``edel``/``eadd``); an edit script is billed at the deleted
element's weight, and added edges always carry weight and cost 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from .graphs import (
    WeightedGraph,
    common_neighbor_count,
    edge_key,
    weighted_degree,
)

WDCE = "WDCE"
WEDCE = "WEDCE"
WERE = "WERE"
WSRE = "WSRE"
KINDS = (WDCE, WEDCE, WERE, WSRE)

VDEL = "vdel"
EDEL = "edel"
EADD = "eadd"
ALL_OPS = (VDEL, EDEL, EADD)

# Kinds whose delta constrains vertices rather than edges.
VERTEX_DELTA_KINDS = (WDCE, WERE, WSRE)


def _norm_sets(mapping, pair=False):
    out = {}
    for key, vals in mapping.items():
        if pair:
            key = edge_key(*key)
        out[key] = frozenset(vals)
    return out


class ConstraintSet:
    """delta / nu / xi as maps with defaults, plus the bounds r, lambda, mu.

    Stored sets must be non-empty subsets of their declared ranges.  The nu
    and xi defaults are normalised eagerly: a missing default means the full
    range [0..lam] (resp. [0..mu]).
    """

    __slots__ = ("r", "lam", "mu", "delta_v", "delta_e", "nu", "xi",
                 "nu_default", "xi_default", "_key")

    def __init__(self, r: int, lam: Optional[int] = None, mu: Optional[int] = None,
                 delta_v: Optional[Dict] = None, delta_e: Optional[Dict] = None,
                 nu: Optional[Dict] = None, xi: Optional[Dict] = None,
                 nu_default: Optional[Iterable[int]] = None,
                 xi_default: Optional[Iterable[int]] = None):
        if r < 0:
            raise ValueError("r must be non-negative")
        if lam is not None and not 0 <= lam <= r:
            raise ValueError(f"lambda={lam} out of range [0..{r}]")
        if mu is not None and not 0 <= mu <= r:
            raise ValueError(f"mu={mu} out of range [0..{r}]")
        self.r = r
        self.lam = lam
        self.mu = mu
        self.delta_v = _norm_sets(delta_v or {})
        self.delta_e = _norm_sets(delta_e or {}, pair=True)
        self.nu = _norm_sets(nu or {}, pair=True)
        self.xi = _norm_sets(xi or {}, pair=True)
        for name, m, hi in (("delta", self.delta_v, r), ("delta", self.delta_e, r),
                            ("nu", self.nu, lam), ("xi", self.xi, mu)):
            for key, vals in m.items():
                if not vals:
                    raise ValueError(f"{name}[{key!r}] is empty")
                if hi is None:
                    raise ValueError(f"{name}[{key!r}] given without its bound")
                if any(x < 0 or x > hi for x in vals):
                    raise ValueError(f"{name}[{key!r}]={sorted(vals)} outside [0..{hi}]")
        if nu_default is not None:
            self.nu_default = frozenset(nu_default)
            if lam is None or not self.nu_default or \
                    any(x < 0 or x > lam for x in self.nu_default):
                raise ValueError("bad nu default")
        else:
            self.nu_default = frozenset(range(lam + 1)) if lam is not None else None
        if xi_default is not None:
            self.xi_default = frozenset(xi_default)
            if mu is None or not self.xi_default or \
                    any(x < 0 or x > mu for x in self.xi_default):
                raise ValueError("bad xi default")
        else:
            self.xi_default = frozenset(range(mu + 1)) if mu is not None else None
        self._key = None

    def delta_of_vertex(self, v) -> frozenset:
        try:
            return self.delta_v[v]
        except KeyError:
            raise KeyError(f"no delta list stored for vertex {v!r}") from None

    def delta_of_edge(self, u, v) -> frozenset:
        try:
            return self.delta_e[edge_key(u, v)]
        except KeyError:
            raise KeyError(f"no delta list stored for edge ({u!r},{v!r})") from None

    def nu_of(self, u, v) -> frozenset:
        got = self.nu.get(edge_key(u, v))
        if got is not None:
            return got
        if self.nu_default is None:
            raise KeyError("nu queried on a constraint set without lambda")
        return self.nu_default

    def xi_of(self, u, v) -> frozenset:
        got = self.xi.get(edge_key(u, v))
        if got is not None:
            return got
        if self.xi_default is None:
            raise KeyError("xi queried on a constraint set without mu")
        return self.xi_default

    # -- value plumbing -----------------------------------------------------

    def replace(self, **kw) -> "ConstraintSet":
        base = dict(r=self.r, lam=self.lam, mu=self.mu, delta_v=self.delta_v,
                    delta_e=self.delta_e, nu=self.nu, xi=self.xi,
                    nu_default=self.nu_default, xi_default=self.xi_default)
        base.update(kw)
        return ConstraintSet(**base)

    def key(self) -> tuple:
        if self._key is None:
            def fm(m):
                return tuple(sorted((k, tuple(sorted(s))) for k, s in m.items()))
            self._key = (self.r, self.lam, self.mu, fm(self.delta_v),
                         fm(self.delta_e), fm(self.nu), fm(self.xi),
                         None if self.nu_default is None else tuple(sorted(self.nu_default)),
                         None if self.xi_default is None else tuple(sorted(self.xi_default)))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, ConstraintSet):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"ConstraintSet(r={self.r}, lam={self.lam}, mu={self.mu}, "
                f"|delta_v|={len(self.delta_v)}, |delta_e|={len(self.delta_e)})")


class ProblemInstance:
    """A graph, its constraints, the allowed operations, and the budget k.

    WEDCE instances discard isolated vertices on construction (they sit on
    no edge, so no constraint can ever mention them) — this mirrors the
    file loader and keeps instance equality well-defined.  k may be
    negative: kernelization charges deletions against the budget and a
    negative result is an immediate no-instance, not an error.
    """

    __slots__ = ("kind", "graph", "constraints", "ops", "k", "unit_weights", "_key")

    def __init__(self, kind: str, graph: WeightedGraph, constraints: ConstraintSet,
                 ops: Iterable[str], k: int, unit_weights: Optional[bool] = None):
        if kind not in KINDS:
            raise ValueError(f"unknown problem kind {kind!r}")
        ops = frozenset(ops)
        if not ops:
            raise ValueError("ops must be non-empty")
        if not ops <= set(ALL_OPS):
            raise ValueError(f"unknown operations {sorted(ops - set(ALL_OPS))}")
        if kind == WEDCE and EADD in ops:
            raise ValueError("edge addition is ill-defined for WEDCE")
        if kind == WEDCE:
            isolated = [v for v in graph.vertices() if not graph.neighbors(v)]
            if isolated:
                graph = graph.subgraph(set(graph.vertices()) - set(isolated))
        derived_unit = graph.is_unit_weight()
        if unit_weights is None:
            unit_weights = derived_unit
        elif unit_weights and not derived_unit:
            raise ValueError("unit_weights set on a weighted graph")
        self.kind = kind
        self.graph = graph
        self.constraints = constraints
        self.ops = ops
        self.k = k
        self.unit_weights = unit_weights
        self._key = None

    def replace(self, **kw) -> "ProblemInstance":
        base = dict(kind=self.kind, graph=self.graph, constraints=self.constraints,
                    ops=self.ops, k=self.k)
        base.update(kw)
        return ProblemInstance(**base)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.kind, self.graph.key(), self.constraints.key(),
                         tuple(sorted(self.ops)), self.k)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"ProblemInstance({self.kind}, n={self.graph.n}, "
                f"m={self.graph.m}, ops={sorted(self.ops)}, k={self.k})")


def star_violation(inst: ProblemInstance) -> Optional[str]:
    """Why ``inst`` is not a *-variant (all consulted lists singletons), or None.

    Checks every list the instance's kind can consult on the current graph,
    including the nu/xi defaults whenever some pair would fall through to
    them.
    """
    cs, g = inst.constraints, inst.graph
    if inst.kind == WEDCE:
        for (u, v) in g.edges():
            if len(cs.delta_of_edge(u, v)) != 1:
                return f"delta({u},{v}) is not a singleton"
        return None
    for v in g.vertices():
        if len(cs.delta_of_vertex(v)) != 1:
            return f"delta({v}) is not a singleton"
    if inst.kind in (WERE, WSRE):
        stored = cs.nu
        if any(edge_key(u, v) not in stored for (u, v) in g.edges()):
            if len(cs.nu_default) != 1:
                return "nu default is not a singleton"
        for e, vals in stored.items():
            if len(vals) != 1:
                return f"nu{e} is not a singleton"
    if inst.kind == WSRE:
        if any(edge_key(u, v) not in cs.xi for (u, v) in g.non_adjacent_pairs()):
            if len(cs.xi_default) != 1:
                return "xi default is not a singleton"
        for e, vals in cs.xi.items():
            if len(vals) != 1:
                return f"xi{e} is not a singleton"
    return None


# -- edit scripts -----------------------------------------------------------


def vdel(v) -> tuple:
    return (VDEL, v)


def edel(u, v) -> tuple:
    return (EDEL,) + edge_key(u, v)


def eadd(u, v) -> tuple:
    return (EADD,) + edge_key(u, v)


_OP_RANK = {VDEL: 0, EDEL: 1, EADD: 2}


def step_sort_key(step: tuple) -> tuple:
    return (_OP_RANK[step[0]], step[1:])


def canonical_steps(steps: Iterable[tuple]) -> Tuple[tuple, ...]:
    """vdel before edel before eadd, ids ascending within each kind."""
    return tuple(sorted(steps, key=step_sort_key))


@dataclass(frozen=True)
class EditScript:
    steps: Tuple[tuple, ...]
    cost: int

    @classmethod
    def build(cls, g: WeightedGraph, steps: Iterable[tuple]) -> "EditScript":
        """Validate ``steps`` against ``g`` and price them."""
        _, cost = _apply_steps(g, tuple(steps))
        return cls(tuple(steps), cost)

    def __iter__(self):
        return iter(self.steps)


def _apply_steps(g: WeightedGraph, steps: Tuple[tuple, ...]):
    cost = 0
    for i, step in enumerate(steps):
        op = step[0]
        try:
            if op == VDEL:
                v = step[1]
                cost += g.vertex_weight(v)
                g = g.delete_vertex(v)
            elif op == EDEL:
                u, v = step[1], step[2]
                cost += g.edge_weight(u, v)
                g = g.delete_edge(u, v)
            elif op == EADD:
                u, v = step[1], step[2]
                if not (g.has_vertex(u) and g.has_vertex(v)):
                    raise KeyError("endpoint missing")
                g = g.add_edge(u, v, 1)
                cost += 1
            else:
                raise ValueError(f"unknown operation {op!r}")
        except (KeyError, ValueError) as exc:
            raise ValueError(f"illegal edit at step {i} ({step!r}): {exc}") from None
    return g, cost


def apply_edit_script(g: WeightedGraph, script) -> WeightedGraph:
    """Apply an EditScript (or a bare step sequence) to ``g``.

    Vertex deletion takes incident edges with it; illegal steps raise
    ValueError naming the offending index.
    """
    steps = tuple(script.steps if isinstance(script, EditScript) else script)
    edited, cost = _apply_steps(g, steps)
    if isinstance(script, EditScript) and cost != script.cost:
        raise ValueError(f"script declares cost {script.cost} but applies at {cost}")
    return edited


def script_cost(g: WeightedGraph, steps: Iterable[tuple]) -> int:
    return _apply_steps(g, tuple(steps))[1]


# -- constraint checking ----------------------------------------------------


def check_constraints(inst: ProblemInstance, g: WeightedGraph) -> bool:
    """Does the edited graph ``g`` satisfy ``inst``'s constraints?

    ``g`` is expected to be an edited descendant of ``inst.graph``; stored
    constraint lists are looked up under the original (stable) ids.
    """
    cs = inst.constraints
    kind = inst.kind
    if kind == WEDCE:
        return all(
            weighted_degree(g, u) + weighted_degree(g, v) in cs.delta_of_edge(u, v)
            for (u, v) in g.edges()
        )
    for v in g.vertices():
        if weighted_degree(g, v) not in cs.delta_of_vertex(v):
            return False
    if kind == WDCE:
        return True
    for (u, v) in g.edges():
        if common_neighbor_count(g, u, v) not in cs.nu_of(u, v):
            return False
    if kind == WERE:
        return True
    for (u, v) in g.non_adjacent_pairs():
        if common_neighbor_count(g, u, v) not in cs.xi_of(u, v):
            return False
    return True
