"""Simple undirected graphs with positive integer vertex and edge weights.

Vertex ids are arbitrary sortable hashables (the file formats restrict them
to integers; line graphs use edge tuples as ids).  Graphs are treated as
immutable values: every mutator returns a fresh graph, and two graphs with
the same vertices, edges and weights compare and hash equal.
"""

from __future__ import annotations

import random
from typing import Dict, Iterable, Iterator, Tuple


def edge_key(u, v):
    """Canonical unordered representation of the pair {u, v}."""
    return (u, v) if u <= v else (v, u)


class WeightedGraph:
    __slots__ = ("_vw", "_ew", "_adj", "_key")

    def __init__(self, vertex_weights: Dict, edge_weights: Dict):
        vw = dict(vertex_weights)
        ew = {}
        for e, w in edge_weights.items():
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            ke = edge_key(u, v)
            if ke in ew:
                raise ValueError(f"parallel edge {ke!r}")
            ew[ke] = w
        for v, w in vw.items():
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"vertex {v!r} has non-positive weight {w!r}")
        for e, w in ew.items():
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"edge {e!r} has non-positive weight {w!r}")
            for end in e:
                if end not in vw:
                    raise ValueError(f"edge {e!r} references missing vertex {end!r}")
        adj = {v: set() for v in vw}
        for (u, v) in ew:
            adj[u].add(v)
            adj[v].add(u)
        self._vw = vw
        self._ew = ew
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._key = None

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable) -> "WeightedGraph":
        """Convenience constructor.

        ``vertices`` mixes bare ids (weight 1) and ``(id, weight)`` pairs;
        ``edges`` mixes ``(u, v)`` (weight 1) and ``(u, v, weight)``.
        """
        vw = {}
        for item in vertices:
            if isinstance(item, tuple):
                vw[item[0]] = item[1]
            else:
                vw[item] = 1
        ew = {}
        for item in edges:
            if len(item) == 3:
                ew[(item[0], item[1])] = item[2]
            else:
                ew[(item[0], item[1])] = 1
        return cls(vw, ew)

    # -- inspection ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._vw)

    @property
    def m(self) -> int:
        return len(self._ew)

    def vertices(self) -> Tuple:
        return tuple(sorted(self._vw))

    def edges(self) -> Tuple:
        return tuple(sorted(self._ew))

    def has_vertex(self, v) -> bool:
        return v in self._vw

    def has_edge(self, u, v) -> bool:
        return edge_key(u, v) in self._ew

    def vertex_weight(self, v) -> int:
        try:
            return self._vw[v]
        except KeyError:
            raise KeyError(f"no vertex {v!r}") from None

    def edge_weight(self, u, v) -> int:
        ke = edge_key(u, v)
        try:
            return self._ew[ke]
        except KeyError:
            raise KeyError(f"no edge {ke!r}") from None

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def degree(self, v) -> int:
        """Unweighted degree |N(v)|."""
        return len(self._adj[v])

    def non_adjacent_pairs(self) -> Iterator[Tuple]:
        vs = self.vertices()
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                if v not in self._adj[u]:
                    yield (u, v)

    # -- edits (all return fresh graphs) ------------------------------------

    def delete_vertex(self, v) -> "WeightedGraph":
        if v not in self._vw:
            raise KeyError(f"no vertex {v!r}")
        vw = {x: w for x, w in self._vw.items() if x != v}
        ew = {e: w for e, w in self._ew.items() if v not in e}
        return WeightedGraph(vw, ew)

    def delete_edge(self, u, v) -> "WeightedGraph":
        ke = edge_key(u, v)
        if ke not in self._ew:
            raise KeyError(f"no edge {ke!r}")
        ew = {e: w for e, w in self._ew.items() if e != ke}
        return WeightedGraph(self._vw, ew)

    def add_edge(self, u, v, weight: int = 1) -> "WeightedGraph":
        ke = edge_key(u, v)
        if ke in self._ew:
            raise ValueError(f"edge {ke!r} already present")
        ew = dict(self._ew)
        ew[ke] = weight
        return WeightedGraph(self._vw, ew)

    def add_vertex(self, v, weight: int = 1) -> "WeightedGraph":
        if v in self._vw:
            raise ValueError(f"vertex {v!r} already present")
        vw = dict(self._vw)
        vw[v] = weight
        return WeightedGraph(vw, self._ew)

    def set_edge_weight(self, u, v, weight: int) -> "WeightedGraph":
        ke = edge_key(u, v)
        if ke not in self._ew:
            raise KeyError(f"no edge {ke!r}")
        ew = dict(self._ew)
        ew[ke] = weight
        return WeightedGraph(self._vw, ew)

    def set_vertex_weight(self, v, weight: int) -> "WeightedGraph":
        if v not in self._vw:
            raise KeyError(f"no vertex {v!r}")
        vw = dict(self._vw)
        vw[v] = weight
        return WeightedGraph(vw, self._ew)

    def subgraph(self, keep: Iterable) -> "WeightedGraph":
        """Induced subgraph on the given vertices."""
        keep = set(keep)
        vw = {v: w for v, w in self._vw.items() if v in keep}
        ew = {e: w for e, w in self._ew.items() if e[0] in keep and e[1] in keep}
        return WeightedGraph(vw, ew)

    # -- identity -----------------------------------------------------------

    def key(self) -> tuple:
        """Canonical hashable form (used for caching and equality)."""
        if self._key is None:
            self._key = (
                tuple(sorted(self._vw.items())),
                tuple(sorted(self._ew.items())),
            )
        return self._key

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"

    def is_unit_weight(self) -> bool:
        return all(w == 1 for w in self._vw.values()) and all(
            w == 1 for w in self._ew.values()
        )


# -- degree measures --------------------------------------------------------


def weighted_degree(g: WeightedGraph, v) -> int:
    """d^rho(v): sum of the weights of the edges incident to v."""
    if not g.has_vertex(v):
        raise KeyError(f"unknown vertex {v!r}")
    return sum(g.edge_weight(v, u) for u in g.neighbors(v))


def weighted_edge_degree(g: WeightedGraph, u, v) -> int:
    """d^rho(uv) = d^rho(u) + d^rho(v), for an edge uv."""
    if not g.has_edge(u, v):
        raise KeyError(f"pair ({u!r}, {v!r}) is not an edge")
    return weighted_degree(g, u) + weighted_degree(g, v)


def common_neighbor_count(g: WeightedGraph, u, v) -> int:
    """|N(u) & N(v)| in the plain adjacency sense; u and v need not be adjacent."""
    if u == v:
        raise ValueError("common_neighbor_count needs two distinct vertices")
    return len(g.neighbors(u) & g.neighbors(v))


def line_graph(g: WeightedGraph) -> WeightedGraph:
    """Unit-weight graph on g's edges; two edges adjacent iff they share an endpoint."""
    nodes = list(g.edges())
    edges = {}
    for i, e in enumerate(nodes):
        for f in nodes[i + 1:]:
            if e[0] in f or e[1] in f:
                edges[(e, f)] = 1
    return WeightedGraph({e: 1 for e in nodes}, edges)


# -- generators -------------------------------------------------------------


def complete(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("complete(n) needs n >= 1")
    return WeightedGraph.build(
        range(n), [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise ValueError("cycle(n) needs n >= 3")
    return WeightedGraph.build(range(n), [(i, (i + 1) % n) for i in range(n)])


def petersen() -> WeightedGraph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i--i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return WeightedGraph.build(range(10), edges)


def random_graph(n: int, edge_probability: float, seed: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("random_graph(n, ...) needs n >= 1")
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError("edge_probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_probability
    ]
    return WeightedGraph.build(range(n), edges)
