"""Lazy proof terms.

A term is either a ``Built`` node, an explicit rule application over
subterms, or a ``View``: a node of a cyclic ``ProofGraph`` seen under an
ordinal instantiation ``rho``, a name map ``pi`` and a realized
constraint.  Unfolding a view follows back-edges and allocates globally
fresh eigenvariables, so views denote the infinite unfolding of the graph
without ever building it.  Ordinal substitution, renaming and constraint
widening act on views by adjusting ``rho`` and the constraint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Union

from .constraints import Constraint, entails, extend, rename as rename_constraint, subst_top, union
from .errors import MaterializeError
from .kernel import Back, ProofGraph, Rule, Sequent, Step, rename_sequent
from .syntax import INF, is_var, map_annotations

_counter = itertools.count(1)


def fresh(base: str) -> str:
    """A globally unused name derived from ``base`` (primed suffixes are reserved)."""
    return f"{base.split(chr(39))[0]}'{next(_counter)}"


@dataclass(frozen=True, eq=False)
class Built:
    sequent: Sequent
    rule: Rule
    premises: tuple["Term", ...]
    label: str | None = None

    def __repr__(self) -> str:
        return f"Built({self.rule}, {len(self.premises)} premises)"


class View:
    """Node ``node`` of ``graph`` instantiated by ``rho``/``pi`` at ``constraint``."""

    __slots__ = ("graph", "node", "rho", "pi", "constraint", "_sequent")

    def __init__(self, graph: ProofGraph, node: str, rho: Mapping[str, str],
                 pi: Mapping[str, str], constraint: Constraint):
        self.graph = graph
        self.node = node
        self.rho = dict(rho)
        self.pi = dict(pi)
        self.constraint = constraint
        self._sequent: Sequent | None = None

    @property
    def sequent(self) -> Sequent:
        if self._sequent is None:
            self._sequent = rename_sequent(self.graph.nodes[self.node].sequent, self.rho, self.pi, self.constraint)
        return self._sequent

    def __repr__(self) -> str:
        return f"View({self.graph.name or 'graph'}:{self.node})"


@dataclass(frozen=True, eq=False)
class Link:
    """A back-edge leaf inside a term under construction: it continues as the
    enclosing ``Built`` node carrying ``label``.  Only ``to_graph`` accepts it."""

    sequent: Sequent
    target: str
    sigma: tuple[tuple[str, str], ...]


Term = Union[Built, View]


def root_view(g: ProofGraph) -> View:
    s = g.conclusion
    rho = {t: t for t in s.constraint.terms()}
    pi = {n: n for n in s.names}
    return View(g, g.root, rho, pi, s.constraint)


def as_term(u) -> Term:
    return root_view(u) if isinstance(u, ProofGraph) else u


def sequent_of(t: Term) -> Sequent:
    return t.sequent


# ---------------------------------------------------------------- unfolding


def follow_back(v: View) -> View:
    """Cross one back-edge: the companion seen with composed renamings."""
    node = v.graph.nodes[v.node]
    assert isinstance(node, Back)
    comp = v.graph.nodes[node.companion]
    sigma = node.sigma_map()
    rho = {x: v.rho[y] for x, y in sigma.items() if y in v.rho}
    pi = {cn: v.pi.get(ln, ln) for (cn, _), (ln, _) in zip(comp.sequent.context, node.sequent.context)}
    return View(v.graph, node.companion, rho, pi, v.constraint)


def _step_view(v: View) -> View:
    while isinstance(v.graph.nodes[v.node], Back):
        v = follow_back(v)
    return v


def unfold_head(t: Term) -> Built:
    """The outermost rule of ``t`` with subterms as terms (views stay lazy)."""
    if isinstance(t, Built):
        return t
    v = _step_view(t)
    node = v.graph.nodes[v.node]
    assert isinstance(node, Step)
    seq = v.sequent
    r = node.rule
    rho = v.rho
    o = v.constraint
    if r.eigen is not None:
        b = fresh(r.eigen)
        rho = {**rho, r.eigen: b}
        o = extend(o, rho[r.outer], b)
    taken = set(seq.names)
    pi = dict(v.pi)
    for z in dict.fromkeys(r.binds):
        pi[z] = z if z not in taken else fresh(z)
    rule = r.map_ordinals(lambda t: rho[t]).map_names(lambda n: pi.get(n, n))
    if r.kind == "Cut":
        # cut names scope over the main premise only; minors keep the outer names
        prems = tuple(View(v.graph, p, rho, v.pi, o) for p in node.premises[:-1])
        prems += (View(v.graph, node.premises[-1], rho, pi, o),)
    else:
        prems = tuple(View(v.graph, p, rho, pi, o) for p in node.premises)
    return Built(seq, rule, prems)


# ---------------------------------------------------------------- uniform maps


def map_term(t: Term, on_seq: Callable[[Sequent], Sequent], on_rule: Callable[[Rule], Rule],
             on_view: Callable[[View], View]) -> Term:
    if isinstance(t, View):
        return on_view(t)
    return Built(on_seq(t.sequent), on_rule(t.rule),
                 tuple(map_term(p, on_seq, on_rule, on_view) for p in t.premises))


def subst_inf(t: Term, a: str) -> Term:
    """``t[a:=inf]``: contract ``a`` into the root everywhere."""
    f = lambda x: INF if x == a else x  # noqa: E731

    def seq(s: Sequent) -> Sequent:
        return Sequent(subst_top(s.constraint, a), tuple((n, map_annotations(g, f)) for n, g in s.context),
                       map_annotations(s.conclusion, f))

    def view(v: View) -> View:
        return View(v.graph, v.node, {k: f(x) for k, x in v.rho.items()}, v.pi, subst_top(v.constraint, a))

    return map_term(t, seq, lambda r: r.map_ordinals(f), view)


def rename_ordinal(t: Term, old: str, new: str) -> Term:
    f = lambda x: new if x == old else x  # noqa: E731

    def seq(s: Sequent) -> Sequent:
        return rename_sequent(s, {old: new}, None, rename_constraint(s.constraint, {old: new}))

    def view(v: View) -> View:
        return View(v.graph, v.node, {k: f(x) for k, x in v.rho.items()}, v.pi,
                    rename_constraint(v.constraint, {old: new}))

    return map_term(t, seq, lambda r: r.map_ordinals(f), view)


def widen(t: Term, extra: Constraint) -> Term:
    """Add the vertices of ``extra`` to every constraint of ``t``."""

    def seq(s: Sequent) -> Sequent:
        return Sequent(union(s.constraint, extra), s.context, s.conclusion)

    def view(v: View) -> View:
        return View(v.graph, v.node, v.rho, v.pi, union(v.constraint, extra))

    return map_term(t, seq, lambda r: r, view)


def ordinal_names(t: Term) -> set[str]:
    """Ordinal variables visible in the explicit part of ``t``."""
    out: set[str] = set()

    def go(u: Term) -> None:
        if isinstance(u, View):
            out.update(u.constraint.vars)
            out.update(x for x in u.rho.values() if is_var(x))
            return
        out.update(u.sequent.constraint.vars)
        if u.rule.eigen:
            out.add(u.rule.eigen)
        for p in u.premises:
            go(p)

    go(t)
    return out


# ---------------------------------------------------------------- materialization


@dataclass
class _Frame:
    key: tuple[int, str]
    copy_id: str
    view: View


def _try_close(entry: _Frame, target: View) -> dict[str, str] | None:
    """A renaming closing ``target`` against the ancestor copy, if one exists."""
    g = target.graph
    sigma: dict[str, str] = {}
    for x in g.needed(target.node) | {INF}:
        src = entry.view.rho.get(x)
        dst = target.rho.get(x)
        if src is None or dst is None:
            if x in g.needed(target.node):
                return None
            continue
        if sigma.get(src, dst) != dst:
            return None
        sigma[src] = dst
    sigma.setdefault(INF, INF)
    oc, ol = entry.view.constraint, target.constraint
    for x in sigma:
        if x not in oc or sigma[x] not in ol:
            return None
    for x in sigma:
        for y in sigma:
            if x != y and entails(oc, x, y) and not entails(ol, sigma[x], sigma[y]):
                return None
    if rename_sequent(entry.view.sequent, sigma, None, ol).conclusion != target.sequent.conclusion:
        return None
    return sigma


def to_graph(t, name: str = "", max_copies: int = 16) -> ProofGraph:
    """Materialize a term as a finite proof graph with ancestor back-edges."""
    if isinstance(t, ProofGraph):
        return t
    nodes: dict = {}
    labels: dict[str, str] = {}
    ids = itertools.count()

    def new_id() -> str:
        return f"n{next(ids)}"

    def go(u: Term, path: list[_Frame]) -> str:
        if isinstance(u, Link):
            if u.target not in labels:
                raise MaterializeError(f"link to unknown or non-enclosing label {u.target!r}")
            nid = new_id()
            nodes[nid] = Back(u.sequent, labels[u.target], tuple(sorted(u.sigma)))
            return nid
        if isinstance(u, Built):
            nid = new_id()
            nodes[nid] = None
            shadowed = labels.get(u.label) if u.label is not None else None
            if u.label is not None:
                labels[u.label] = nid
            prem = tuple(go(p, path) for p in u.premises)
            nodes[nid] = Step(u.sequent, u.rule, prem)
            if u.label is not None:
                if shadowed is None:
                    del labels[u.label]
                else:
                    labels[u.label] = shadowed
            return nid
        g = u.graph
        copies = 0
        while isinstance(g.nodes[u.node], Back):
            target = follow_back(u)
            key = (id(g), target.node)
            for entry in reversed(path):
                if entry.key == key:
                    sigma = _try_close(entry, target)
                    if sigma is not None:
                        nid = new_id()
                        nodes[nid] = Back(target.sequent, entry.copy_id, tuple(sorted(sigma.items())))
                        return nid
            copies = sum(1 for e in path if e.key == key)
            if copies >= max_copies:
                raise MaterializeError(f"companion {target.node} expanded {copies} times without closing")
            u = target
        nid = new_id()
        nodes[nid] = None
        head = unfold_head(u)
        frame = _Frame((id(g), u.node), nid, u)
        prem = tuple(go(p, path + [frame]) for p in head.premises)
        nodes[nid] = Step(head.sequent, head.rule, prem)
        return nid

    root = go(t, [])
    return canonicalize(ProofGraph(nodes, root, name))


def canonicalize(g: ProofGraph) -> ProofGraph:
    """Replace primed fresh names by short readable ones, consistently."""
    ord_names: set[str] = set()
    term_names: set[str] = set()
    for n in g.nodes.values():
        ord_names |= n.sequent.constraint.vars
        term_names.update(n.sequent.names)
        if isinstance(n, Step):
            term_names.update(n.rule.binds)
            if n.rule.eigen:
                ord_names.add(n.rule.eigen)
    ord_map = _short_names(ord_names)
    name_map = _short_names(term_names)
    if not ord_map and not name_map:
        return g
    o = lambda x: ord_map.get(x, x)  # noqa: E731
    m = lambda x: name_map.get(x, x)  # noqa: E731
    nodes = {}
    for nid, n in g.nodes.items():
        s = rename_sequent(n.sequent, ord_map, name_map, rename_constraint(n.sequent.constraint, ord_map))
        if isinstance(n, Step):
            nodes[nid] = Step(s, n.rule.map_ordinals(o).map_names(m), n.premises)
        else:
            nodes[nid] = Back(s, n.companion, tuple(sorted((o(x), o(y)) for x, y in n.sigma)))
    return ProofGraph(nodes, g.root, g.name)


def _short_names(names: set[str]) -> dict[str, str]:
    primed = sorted((n for n in names if "'" in n), key=lambda n: (n.split("'")[0], int(n.split("'")[1] or 0)))
    taken = {n for n in names if "'" not in n}
    out = {}
    for n in primed:
        base = n.split("'")[0]
        for i in itertools.count(1):
            cand = f"{base}{i}"
            if cand not in taken:
                taken.add(cand)
                out[n] = cand
                break
    return out


# ---------------------------------------------------------------- navigation


Position = tuple[int, ...]


def subterm(t: Term, pos: Position) -> Term:
    for i in pos:
        t = unfold_head(t).premises[i]
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    head = unfold_head(t)
    i, rest = pos[0], pos[1:]
    prems = list(head.premises)
    prems[i] = replace_at(prems[i], rest, new)
    return Built(head.sequent, head.rule, tuple(prems))


def iter_built(t: Term, depth: int) -> Iterator[Built]:
    """Pre-order walk of the unfolding, down to ``depth`` rules."""
    if depth <= 0:
        return
    head = unfold_head(t)
    yield head
    for p in head.premises:
        yield from iter_built(p, depth - 1)
