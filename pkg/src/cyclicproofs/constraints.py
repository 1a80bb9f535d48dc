"""Ordinal constraints: finite trees of ordinal terms rooted at ``inf``.

A term strictly below another in the tree is entailed to be a smaller
ordinal.  Trees are persistent; every operation returns a new object.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import NameClash, NotChildOfRoot, ParseError, UnknownTerm
from .syntax import INF, OrdinalTerm, check_ordinal


class Constraint:
    """Rooted tree stored as a child -> parent map (the root is implicit)."""

    __slots__ = ("_parent", "_hash")

    def __init__(self, parent: Mapping[str, str] | None = None):
        self._parent: dict[str, str] = dict(parent or {})
        self._hash: int | None = None
        for v, p in self._parent.items():
            if v == INF:
                raise NameClash("inf cannot be a non-root vertex")
            if p != INF and p not in self._parent:
                raise UnknownTerm(f"parent {p!r} of {v!r} is not a vertex")
        # reject cycles
        for v in self._parent:
            seen = set()
            while v != INF:
                if v in seen:
                    raise ParseError("constraint parent links contain a cycle")
                seen.add(v)
                v = self._parent[v]

    # -- basic queries
    @property
    def vars(self) -> frozenset[str]:
        return frozenset(self._parent)

    def terms(self) -> frozenset[str]:
        return frozenset(self._parent) | {INF}

    def __contains__(self, t: object) -> bool:
        return t == INF or t in self._parent

    def parent(self, v: str) -> str:
        if v not in self._parent:
            raise UnknownTerm(v)
        return self._parent[v]

    def children(self, t: OrdinalTerm) -> list[str]:
        return sorted(v for v, p in self._parent.items() if p == t)

    def ancestors(self, t: OrdinalTerm) -> Iterator[str]:
        """Proper ancestors of ``t`` from its parent up to ``inf``."""
        while t != INF:
            t = self._parent[t]
            yield t

    def is_trivial(self) -> bool:
        return not self._parent

    def items(self) -> Iterable[tuple[str, str]]:
        return self._parent.items()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Constraint) and self._parent == other._parent

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._parent.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Constraint({show_constraint(self)!r})"

    def __str__(self) -> str:
        return show_constraint(self)


TRIVIAL = Constraint()


def _require(o: Constraint, t: OrdinalTerm) -> None:
    if t not in o:
        raise UnknownTerm(f"ordinal term {t!r} does not occur in the constraint")


def entails(o: Constraint, a: OrdinalTerm, b: OrdinalTerm) -> bool:
    """``o ⊩ a < b``.  Note that ``inf < inf`` always holds."""
    _require(o, a)
    _require(o, b)
    if b == INF:
        return True
    if a == b or a == INF:
        return False
    return b in o.ancestors(a)


def extend(o: Constraint, at: OrdinalTerm, fresh: str) -> Constraint:
    _require(o, at)
    if fresh in o:
        raise NameClash(f"ordinal variable {fresh!r} already occurs")
    check_ordinal(fresh)
    d = dict(o._parent)
    d[fresh] = at
    return Constraint(d)


def subst_top(o: Constraint, a: str) -> Constraint:
    """Contract the root edge above ``a``, merging ``a`` into ``inf``."""
    if a not in o._parent:
        raise UnknownTerm(f"ordinal variable {a!r} does not occur")
    if o._parent[a] != INF:
        raise NotChildOfRoot(f"{a!r} has parent {o._parent[a]!r}")
    return Constraint({v: (INF if p == a else p) for v, p in o._parent.items() if v != a})


def rename(o: Constraint, mapping: Mapping[str, str]) -> Constraint:
    """Injective renaming of variables (unmapped ones are kept)."""
    m = lambda t: mapping.get(t, t)  # noqa: E731
    new = {m(v): m(p) for v, p in o._parent.items()}
    if len(new) != len(o._parent):
        raise NameClash("renaming is not injective")
    return Constraint(new)


def union(o: Constraint, other: Constraint) -> Constraint:
    """Merge two trees that agree on shared vertices."""
    d = dict(o._parent)
    for v, p in other._parent.items():
        if v in d and d[v] != p:
            raise NameClash(f"{v!r} has different parents in the merged constraints")
        d[v] = p
    return Constraint(d)


def is_subtree(small: Constraint, big: Constraint) -> bool:
    return all(big._parent.get(v) == p for v, p in small._parent.items())


def chain(*terms: str) -> Constraint:
    """``chain("b", "a")`` is ``b < a < inf``."""
    d = {}
    seq = list(terms) + [INF]
    for lo, hi in zip(seq, seq[1:]):
        d[lo] = hi
    return Constraint(d)


def show_constraint(o: Constraint) -> str:
    """Comma separated chains, one per leaf, without repeating edges."""
    if o.is_trivial():
        return ""
    printed: set[str] = set()
    parts = []
    leaves = sorted(v for v in o.vars if not o.children(v))
    for leaf in leaves:
        seq = [leaf]
        t = leaf
        while t != INF and t not in printed:
            printed.add(t)
            t = o.parent(t)
            seq.append(t)
        parts.append(" < ".join(seq))
    return ", ".join(parts)


def parse_constraint(text: str) -> Constraint:
    d: dict[str, str] = {}
    text = text.strip()
    if not text:
        return TRIVIAL
    for part in text.split(","):
        seq = [s.strip() for s in part.split("<")]
        if any(not s for s in seq):
            raise ParseError(f"bad constraint chain {part!r}")
        for s in seq:
            check_ordinal(s)
        if seq[-1] != INF and seq[-1] not in d:
            raise ParseError(f"chain {part!r} must end in inf or a known variable")
        for lo, hi in zip(seq, seq[1:]):
            if lo == INF:
                raise ParseError("inf cannot sit below another term")
            if lo in d and d[lo] != hi:
                raise ParseError(f"{lo!r} given two parents")
            d[lo] = hi
    return Constraint(d)
