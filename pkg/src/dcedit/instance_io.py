"""Text formats: instance files, PACE-style tree decompositions, edit scripts.

Instance files are line-oriented: ``#`` starts a comment, tokens are
whitespace-separated, and ``{...}`` sets hold comma-separated integers or
``a..b`` ranges.  Serialization is canonical — fixed directive order,
sorted ids, plain comma sets — so equal instances produce identical bytes
and every serialized instance parses back to an equal instance.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from .graphs import WeightedGraph, edge_key
from .problems import (
    EADD,
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
    _OP_RANK,
)
from .treewidth import TreeDecomposition


class ParseError(ValueError):
    def __init__(self, line: Optional[int], msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


_SET_RE = re.compile(r"\{[^{}]*\}")


def _tokenize(raw: str) -> List[str]:
    body = raw.split("#", 1)[0]
    body = _SET_RE.sub(lambda m: re.sub(r"\s+", "", m.group(0)), body)
    return body.split()


def _int(tok: str, ln: int, what: str = "integer") -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(ln, f"expected {what}, got {tok!r}") from None


def _parse_set(tok: str, ln: int) -> frozenset:
    if not (tok.startswith("{") and tok.endswith("}")):
        raise ParseError(ln, f"expected a {{...}} set, got {tok!r}")
    vals = set()
    inner = tok[1:-1]
    for part in inner.split(",") if inner else ():
        if ".." in part:
            lo_s, _, hi_s = part.partition("..")
            lo, hi = _int(lo_s, ln, "range bound"), _int(hi_s, ln, "range bound")
            if hi < lo:
                raise ParseError(ln, f"descending range {part!r}")
            vals.update(range(lo, hi + 1))
        elif part:
            vals.add(_int(part, ln, "set element"))
        else:
            raise ParseError(ln, "empty element in set")
    if not vals:
        raise ParseError(ln, "empty set")
    return frozenset(vals)


def _parse_kv(tokens: List[str], ln: int) -> Tuple[Optional[int], Optional[frozenset]]:
    weight, delta = None, None
    for tok in tokens:
        key, eq, val = tok.partition("=")
        if not eq or key not in ("weight", "delta"):
            raise ParseError(ln, f"expected weight=... or delta={{...}}, got {tok!r}")
        if key == "weight":
            if weight is not None:
                raise ParseError(ln, "duplicate weight=")
            weight = _int(val, ln, "weight")
        else:
            if delta is not None:
                raise ParseError(ln, "duplicate delta=")
            delta = _parse_set(val, ln)
    return weight, delta


def parse_instance(text: str) -> ProblemInstance:
    directives: Dict[str, Tuple[int, object]] = {}
    verts: Dict[int, Tuple[int, int, Optional[frozenset]]] = {}
    edges: Dict[Tuple[int, int], Tuple[int, int, Optional[frozenset]]] = {}
    nu_pairs: Dict[Tuple[int, int], Tuple[int, frozenset]] = {}
    xi_pairs: Dict[Tuple[int, int], Tuple[int, frozenset]] = {}
    defaults: Dict[str, Tuple[int, frozenset]] = {}

    def set_directive(name: str, value, ln: int):
        if name in directives:
            raise ParseError(ln, f"duplicate `{name}` directive")
        directives[name] = (ln, value)

    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize(raw)
        if not toks:
            continue
        head, rest = toks[0], toks[1:]
        if head == "problem":
            if len(rest) != 1 or rest[0] not in KINDS:
                raise ParseError(ln, f"problem must be one of {'|'.join(KINDS)}")
            set_directive("problem", rest[0], ln)
        elif head == "ops":
            if not rest or any(op not in (VDEL, EDEL, EADD) for op in rest):
                raise ParseError(ln, "ops takes a non-empty subset of: vdel edel eadd")
            set_directive("ops", frozenset(rest), ln)
        elif head in ("k", "r", "lambda", "mu"):
            if len(rest) != 1:
                raise ParseError(ln, f"`{head}` takes one integer")
            set_directive(head, _int(rest[0], ln), ln)
        elif head == "vertex":
            if not rest:
                raise ParseError(ln, "vertex needs an id")
            v = _int(rest[0], ln, "vertex id")
            if v in verts:
                raise ParseError(ln, f"duplicate vertex {v}")
            weight, delta = _parse_kv(rest[1:], ln)
            verts[v] = (ln, 1 if weight is None else weight, delta)
        elif head == "edge":
            if len(rest) < 2:
                raise ParseError(ln, "edge needs two endpoint ids")
            u, v = _int(rest[0], ln, "vertex id"), _int(rest[1], ln, "vertex id")
            if u == v:
                raise ParseError(ln, f"self-loop at {u}")
            e = edge_key(u, v)
            if e in edges:
                raise ParseError(ln, f"duplicate edge {u} {v}")
            weight, delta = _parse_kv(rest[2:], ln)
            edges[e] = (ln, 1 if weight is None else weight, delta)
        elif head in ("nu", "xi"):
            if len(rest) != 3:
                raise ParseError(ln, f"`{head}` takes: <u> <v> {{...}}")
            u, v = _int(rest[0], ln, "vertex id"), _int(rest[1], ln, "vertex id")
            if u == v:
                raise ParseError(ln, f"`{head}` needs two distinct vertices")
            store = nu_pairs if head == "nu" else xi_pairs
            e = edge_key(u, v)
            if e in store:
                raise ParseError(ln, f"duplicate `{head}` entry for {u} {v}")
            store[e] = (ln, _parse_set(rest[2], ln))
        elif head == "default":
            if len(rest) != 2 or rest[0] not in ("nu", "xi"):
                raise ParseError(ln, "default takes: nu|xi {...}")
            if rest[0] in defaults:
                raise ParseError(ln, f"duplicate `default {rest[0]}`")
            defaults[rest[0]] = (ln, _parse_set(rest[1], ln))
        else:
            raise ParseError(ln, f"unknown directive {head!r}")

    def need(name: str):
        if name not in directives:
            raise ParseError(None, f"missing `{name}` directive")
        return directives[name]

    _, kind = need("problem")
    _, ops = need("ops")
    _, k = need("k")
    r_line, r = need("r")
    if r < 0:
        raise ParseError(r_line, "r must be non-negative")
    uses_vdelta = kind != WEDCE
    uses_edelta = kind == WEDCE
    uses_nu = kind in (WERE, WSRE)
    uses_xi = kind == WSRE
    for name, used in (("lambda", uses_nu), ("mu", uses_xi)):
        if name in directives and not used:
            raise ParseError(directives[name][0], f"`{name}` does not apply to {kind}")
    lam = directives.get("lambda", (None, r if uses_nu else None))[1]
    mu = directives.get("mu", (None, r if uses_xi else None))[1]
    if lam is not None and not 0 <= lam <= r:
        raise ParseError(directives.get("lambda", (None,))[0],
                         f"lambda={lam} out of range [0..{r}]")
    if mu is not None and not 0 <= mu <= r:
        raise ParseError(directives.get("mu", (None,))[0],
                         f"mu={mu} out of range [0..{r}]")
    for name, used in (("nu", uses_nu), ("xi", uses_xi)):
        store = nu_pairs if name == "nu" else xi_pairs
        for (u, v), (ln, _) in sorted(store.items()):
            if not used:
                raise ParseError(ln, f"`{name}` does not apply to {kind}")
            if u not in verts or v not in verts:
                raise ParseError(ln, f"`{name}` references an undeclared vertex")
        if name in defaults and not used:
            raise ParseError(defaults[name][0], f"`default {name}` does not apply to {kind}")

    def check_vals(vals: frozenset, hi: int, ln: int, what: str):
        if any(x < 0 or x > hi for x in vals):
            raise ParseError(ln, f"{what} values {sorted(vals)} outside [0..{hi}]")

    dv, de = {}, {}
    for v, (ln, w, delta) in sorted(verts.items()):
        if w < 1:
            raise ParseError(ln, f"vertex weight must be >= 1, got {w}")
        if delta is None and uses_vdelta:
            raise ParseError(ln, f"{kind} requires delta={{...}} on vertex {v}")
        if delta is not None:
            if not uses_vdelta:
                raise ParseError(ln, f"vertex delta does not apply to {kind}")
            check_vals(delta, r, ln, "delta")
            dv[v] = delta
    for (u, v), (ln, w, delta) in sorted(edges.items()):
        if u not in verts or v not in verts:
            raise ParseError(ln, "edge references an undeclared vertex")
        if w < 1:
            raise ParseError(ln, f"edge weight must be >= 1, got {w}")
        if delta is None and uses_edelta:
            raise ParseError(ln, f"{kind} requires delta={{...}} on edge {u} {v}")
        if delta is not None:
            if not uses_edelta:
                raise ParseError(ln, f"edge delta does not apply to {kind}")
            check_vals(delta, r, ln, "delta")
            de[(u, v)] = delta
    nu = {}
    for (u, v), (ln, vals) in sorted(nu_pairs.items()):
        check_vals(vals, lam, ln, "nu")
        nu[(u, v)] = vals
    xi = {}
    for (u, v), (ln, vals) in sorted(xi_pairs.items()):
        check_vals(vals, mu, ln, "xi")
        xi[(u, v)] = vals
    if "nu" in defaults:
        check_vals(defaults["nu"][1], lam, defaults["nu"][0], "default nu")
    if "xi" in defaults:
        check_vals(defaults["xi"][1], mu, defaults["xi"][0], "default xi")
    try:
        graph = WeightedGraph({v: w for v, (_, w, _) in verts.items()},
                              {e: w for e, (_, w, _) in edges.items()})
        cs = ConstraintSet(r=r, lam=lam, mu=mu, delta_v=dv, delta_e=de,
                           nu=nu, xi=xi,
                           nu_default=defaults.get("nu", (None, None))[1],
                           xi_default=defaults.get("xi", (None, None))[1])
        return ProblemInstance(kind=kind, graph=graph, constraints=cs, ops=ops, k=k)
    except ValueError as exc:
        raise ParseError(None, str(exc)) from None


def _fmt_set(vals) -> str:
    return "{" + ",".join(str(x) for x in sorted(vals)) + "}"


def serialize_instance(inst: ProblemInstance) -> str:
    cs = inst.constraints
    kind = inst.kind
    uses_vdelta = kind != WEDCE
    uses_edelta = kind == WEDCE
    uses_nu = kind in (WERE, WSRE)
    uses_xi = kind == WSRE
    lines = [
        f"problem {kind}",
        "ops " + " ".join(sorted(inst.ops, key=_OP_RANK.__getitem__)),
        f"k {inst.k}",
        f"r {cs.r}",
    ]
    if uses_nu:
        if cs.lam is None:
            raise ValueError(f"{kind} instance has no lambda to serialize")
        lines.append(f"lambda {cs.lam}")
    if uses_xi:
        if cs.mu is None:
            raise ValueError(f"{kind} instance has no mu to serialize")
        lines.append(f"mu {cs.mu}")
    if uses_nu:
        lines.append(f"default nu {_fmt_set(cs.nu_default)}")
    if uses_xi:
        lines.append(f"default xi {_fmt_set(cs.xi_default)}")
    for v in inst.graph.vertices():
        entry = f"vertex {v} weight={inst.graph.vertex_weight(v)}"
        if uses_vdelta:
            entry += f" delta={_fmt_set(cs.delta_of_vertex(v))}"
        lines.append(entry)
    for (u, v) in inst.graph.edges():
        entry = f"edge {u} {v} weight={inst.graph.edge_weight(u, v)}"
        if uses_edelta:
            entry += f" delta={_fmt_set(cs.delta_of_edge(u, v))}"
        lines.append(entry)
    if uses_nu:
        for (u, v), vals in sorted(cs.nu.items()):
            lines.append(f"nu {u} {v} {_fmt_set(vals)}")
    if uses_xi:
        for (u, v), vals in sorted(cs.xi.items()):
            lines.append(f"xi {u} {v} {_fmt_set(vals)}")
    return "\n".join(lines) + "\n"


# -- tree decompositions ----------------------------------------------------


def parse_decomposition(text: str) -> TreeDecomposition:
    header: Optional[Tuple[int, int, int, int]] = None
    bags: Dict[int, frozenset] = {}
    tree: List[Tuple[int, int]] = []
    edge_lines: List[int] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize(raw)
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "s":
            if header is not None:
                raise ParseError(ln, "duplicate header")
            if len(toks) != 5 or toks[1] != "td":
                raise ParseError(ln, "header must be: s td <#bags> <width+1> <#vertices>")
            header = (ln, _int(toks[2], ln), _int(toks[3], ln), _int(toks[4], ln))
        elif toks[0] == "b":
            if header is None:
                raise ParseError(ln, "bag line before header")
            if len(toks) < 2:
                raise ParseError(ln, "bag line needs an id")
            bid = _int(toks[1], ln, "bag id")
            if bid in bags:
                raise ParseError(ln, f"duplicate bag {bid}")
            bags[bid] = frozenset(_int(t, ln, "vertex id") for t in toks[2:])
        else:
            if header is None:
                raise ParseError(ln, "edge line before header")
            if len(toks) != 2:
                raise ParseError(ln, "tree edge line needs two bag ids")
            tree.append((_int(toks[0], ln), _int(toks[1], ln)))
            edge_lines.append(ln)
    if header is None:
        raise ParseError(None, "missing `s td` header")
    hline, nbags, wplus1, nverts = header
    if len(bags) != nbags:
        raise ParseError(hline, f"header declares {nbags} bags, found {len(bags)}")
    max_bag = max((len(b) for b in bags.values()), default=0)
    if max_bag != wplus1:
        raise ParseError(hline, f"header declares width+1={wplus1}, bags reach {max_bag}")
    union = set().union(*bags.values()) if bags else set()
    if len(union) != nverts:
        raise ParseError(hline, f"header declares {nverts} vertices, bags hold {len(union)}")
    for (i, j), ln in zip(tree, edge_lines):
        if i not in bags or j not in bags:
            raise ParseError(ln, f"tree edge {i} {j} references an unknown bag")
    return TreeDecomposition(bags, tuple(tree))


def serialize_decomposition(td: TreeDecomposition) -> str:
    union = set().union(*td.bags.values()) if td.bags else set()
    max_bag = max((len(b) for b in td.bags.values()), default=0)
    lines = [f"s td {len(td.bags)} {max_bag} {len(union)}"]
    for bid in sorted(td.bags):
        lines.append(" ".join(["b", str(bid)] + [str(v) for v in sorted(td.bags[bid])]))
    for (i, j) in sorted(tuple(sorted(e)) for e in td.tree):
        lines.append(f"{i} {j}")
    return "\n".join(lines) + "\n"


# -- edit scripts -----------------------------------------------------------


def parse_script(text: str) -> Tuple[tuple, ...]:
    """Edit steps, one per line; a leading `YES .../NO` answer line is
    skipped so `solve` output can be fed straight back in."""
    steps: List[tuple] = []
    first_content = True
    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize(raw)
        if not toks:
            continue
        if first_content and toks[0] in ("YES", "NO"):
            first_content = False
            continue
        first_content = False
        op = toks[0]
        if op == VDEL:
            if len(toks) != 2:
                raise ParseError(ln, "vdel takes one vertex id")
            steps.append((VDEL, _int(toks[1], ln, "vertex id")))
        elif op in (EDEL, EADD):
            if len(toks) != 3:
                raise ParseError(ln, f"{op} takes two vertex ids")
            steps.append((op,) + edge_key(_int(toks[1], ln, "vertex id"),
                                          _int(toks[2], ln, "vertex id")))
        else:
            raise ParseError(ln, f"unknown edit {op!r}")
    return tuple(steps)


def serialize_script(script: EditScript) -> str:
    return "".join(" ".join(str(t) for t in step) + "\n" for step in script.steps)
