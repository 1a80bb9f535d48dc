"""Infinite-descent validity of cyclic proof graphs via size-change closure.

Vertices of a descent graph are the constraint variables of a node plus a
vertex for ``inf``.  A thread may sit on ``inf`` because a back-edge with
``sigma(inf)`` a variable realizes the companion's ``inf`` by a variable;
a strict arc never enters ``inf`` otherwise, so the trivial chain
``inf > inf`` is never counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .constraints import entails
from .errors import MismatchedInterface
from .kernel import Back, ProofGraph, Step
from .syntax import INF, is_var


@dataclass(frozen=True)
class DescentGraph:
    source_vars: frozenset[str]
    target_vars: frozenset[str]
    arcs: frozenset[tuple[str, str, bool]] = field(default_factory=frozenset)

    def __post_init__(self):
        best: dict[tuple[str, str], bool] = {}
        for s, d, strict in self.arcs:
            if s not in self.source_vars or d not in self.target_vars:
                raise ValueError(f"arc {s}->{d} outside the declared vertices")
            best[(s, d)] = best.get((s, d), False) or strict
        object.__setattr__(self, "arcs", frozenset((s, d, k) for (s, d), k in best.items()))

    def arc(self, s: str, d: str) -> bool | None:
        """None if absent, else whether the arc is strict."""
        for a, b, k in self.arcs:
            if a == s and b == d:
                return k
        return None

    def strict_self_arc(self) -> bool:
        return any(k and s == d for s, d, k in self.arcs)

    def __str__(self) -> str:
        parts = sorted(f"{s}->{d}{' strict' if k else ''}" for s, d, k in self.arcs)
        return "{" + ", ".join(parts) + "}"


def identity(vs: Iterable[str]) -> DescentGraph:
    vs = frozenset(vs)
    return DescentGraph(vs, vs, frozenset((v, v, False) for v in vs))


def compose(g1: DescentGraph, g2: DescentGraph) -> DescentGraph:
    """Thread concatenation: first ``g1``, then ``g2``."""
    if g1.target_vars != g2.source_vars:
        raise MismatchedInterface("target vertices of the first graph differ from sources of the second")
    out: dict[tuple[str, str], bool] = {}
    by_src: dict[str, list[tuple[str, bool]]] = {}
    for s, d, k in g2.arcs:
        by_src.setdefault(s, []).append((d, k))
    for s, m, k1 in g1.arcs:
        for d, k2 in by_src.get(m, ()):
            out[(s, d)] = out.get((s, d), False) or k1 or k2
    return DescentGraph(g1.source_vars, g2.target_vars, frozenset((s, d, k) for (s, d), k in out.items()))


def vertices(g: ProofGraph, nid: str) -> frozenset[str]:
    return g.nodes[nid].sequent.constraint.vars | {INF}


def tree_graph(g: ProofGraph, parent: str, child: str) -> DescentGraph:
    src, dst = vertices(g, parent), vertices(g, child)
    o = g.nodes[child].sequent.constraint
    arcs = {(v, v, False) for v in src}
    arcs |= {(v, w, True) for v in src for w in dst if is_var(w) and entails(o, w, v)}
    return DescentGraph(src, dst, frozenset(arcs))


def back_graph(g: ProofGraph, leaf: str) -> DescentGraph:
    node = g.nodes[leaf]
    assert isinstance(node, Back)
    src, dst = vertices(g, leaf), vertices(g, node.companion)
    o = node.sequent.constraint
    arcs = set()
    for x, y in node.sigma_map().items():
        for v in src:
            if y == v:
                arcs.add((v, x, False))
            elif is_var(y) and entails(o, y, v):
                arcs.add((v, x, True))
    return DescentGraph(src, dst, frozenset(arcs))


def descent_graph(g: ProofGraph, edge: tuple[str, str]) -> DescentGraph:
    """Descent graph of a tree edge ``(parent, premise)`` or back-edge ``(leaf, companion)``."""
    a, b = edge
    node = g.nodes[a]
    if isinstance(node, Back):
        if node.companion != b:
            raise ValueError(f"{a} is a back-edge to {node.companion}, not {b}")
        return back_graph(g, a)
    if b not in node.premises:
        raise ValueError(f"{b} is not a premise of {a}")
    return tree_graph(g, a, b)


class CallEdge(NamedTuple):
    src: str
    dst: str
    graph: DescentGraph
    path: tuple[str, ...]


def call_edges(g: ProofGraph) -> list[CallEdge]:
    """Paths from each companion to the next companion or through a back-edge."""
    comps = g.companions()
    out: list[CallEdge] = []
    for c in sorted(comps):
        stack = [(c, identity(vertices(g, c)), (c,))]
        while stack:
            nid, dg, path = stack.pop()
            node = g.nodes[nid]
            if isinstance(node, Back):
                out.append(CallEdge(c, node.companion, compose(dg, back_graph(g, nid)), path + (node.companion,)))
                continue
            for p in reversed(node.premises):
                dg2 = compose(dg, tree_graph(g, nid, p))
                if p in comps:
                    out.append(CallEdge(c, p, dg2, path + (p,)))
                else:
                    stack.append((p, dg2, path + (p,)))
    return out


@dataclass(frozen=True)
class Valid:
    def __bool__(self) -> bool:
        return True

    def __str__(self) -> str:
        return "valid"


@dataclass(frozen=True)
class Invalid:
    witness: tuple[str, ...]
    graph: DescentGraph

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return "invalid: cycle " + " -> ".join(self.witness)


def decide(edges: Iterable[CallEdge]) -> Valid | Invalid:
    """Size-change criterion: every idempotent loop needs a strict self-arc."""
    edges = list(edges)
    seen: dict[tuple[str, str, DescentGraph], tuple[str, ...]] = {}
    frontier = []
    for e in edges:
        key = (e.src, e.dst, e.graph)
        if key not in seen:
            seen[key] = e.path
            frontier.append(key)
    by_src: dict[str, list[CallEdge]] = {}
    for e in edges:
        by_src.setdefault(e.src, []).append(e)
    # breadth first, so witnesses come out short
    while frontier:
        nxt = []
        for key in frontier:
            s, d, dg = key
            for e in by_src.get(d, ()):
                k2 = (s, e.dst, compose(dg, e.graph))
                if k2 not in seen:
                    seen[k2] = seen[key] + e.path[1:]
                    nxt.append(k2)
        frontier = nxt
    bad = [
        (len(path), path, dg)
        for (s, d, dg), path in seen.items()
        if s == d and compose(dg, dg) == dg and not dg.strict_self_arc()
    ]
    if bad:
        _, path, dg = min(bad, key=lambda t: (t[0], t[1]))
        return Invalid(path, dg)
    return Valid()


def check_validity(g: ProofGraph) -> Valid | Invalid:
    return decide(call_edges(g))


# ---------------------------------------------------------------- oracle


def brute_force_validity(g: ProofGraph, max_len: int = 12) -> bool:
    """Enumerate closed walks of at most ``max_len`` edges and look for a
    strictly descending thread along each walk repeated forever.

    Deliberately shares no code with the closure procedure above.
    """
    succ: dict[str, list[str]] = {}
    for nid, n in g.nodes.items():
        succ[nid] = [n.companion] if isinstance(n, Back) else list(n.premises)

    def arcs(a: str, b: str) -> list[tuple[str, str, bool]]:
        na = g.nodes[a]
        va = na.sequent.constraint.vars | {INF}
        vb = g.nodes[b].sequent.constraint.vars | {INF}
        out = []
        if isinstance(na, Back):
            o = na.sequent.constraint
            sig = dict(na.sigma)
            sig.setdefault(INF, INF)
            for x in vb:
                if x not in sig:
                    continue
                y = sig[x]
                for v in va:
                    if y == v:
                        out.append((v, x, False))
                    elif y != INF and entails(o, y, v):
                        out.append((v, x, True))
        else:
            o = g.nodes[b].sequent.constraint
            for v in va:
                out.append((v, v, False))
                for w in vb:
                    if w != INF and entails(o, w, v):
                        out.append((v, w, True))
        return out

    def good(walk: list[str]) -> bool:
        m = len(walk) - 1
        edges: dict[tuple[int, str], list[tuple[tuple[int, str], bool]]] = {}
        for i in range(m):
            for v, w, k in arcs(walk[i], walk[i + 1]):
                edges.setdefault((i, v), []).append((((i + 1) % m, w), k))
        for start, outs in edges.items():
            for tgt, k in outs:
                if k and _reaches(edges, tgt, start):
                    return True
        return False

    comps = {n.companion for n in g.nodes.values() if isinstance(n, Back)}
    for c in comps:
        stack = [[c]]
        while stack:
            walk = stack.pop()
            if len(walk) > 1 and walk[-1] == c and not good(walk):
                return False
            if len(walk) - 1 < max_len:
                for nxt in succ[walk[-1]]:
                    stack.append(walk + [nxt])
    return True


def _reaches(edges, src, dst) -> bool:
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for v, _ in edges.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False
