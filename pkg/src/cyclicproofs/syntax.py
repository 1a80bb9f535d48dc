"""Ordinal-annotated fixpoint formulas over a single fixpoint variable X.

Ordinal terms are plain strings; ``INF`` is the reserved spelling of the
top element and every other string is a variable name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping, NamedTuple, Union

from .errors import ParseError, PositivityError, ScopeError, ShapeError

INF = "inf"
OrdinalTerm = str

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def is_var(t: OrdinalTerm) -> bool:
    return t != INF


def check_ordinal(t: str) -> OrdinalTerm:
    if t != INF and not _IDENT.match(t):
        raise ParseError(f"bad ordinal term {t!r}")
    return t


@dataclass(frozen=True, slots=True)
class Top:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, slots=True)
class FixVar:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, slots=True)
class Mu:
    ann: OrdinalTerm
    body: "Formula"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, slots=True)
class Nu:
    ann: OrdinalTerm
    body: "Formula"

    def __str__(self) -> str:
        return show(self)


Formula = Union[Top, FixVar, Or, And, Imp, Mu, Nu]
Binder = (Mu, Nu)
BinOp = (Or, And, Imp)

TOP = Top()
X = FixVar()


# ---------------------------------------------------------------- traversal


def map_annotations(f: Formula, fn: Callable[[OrdinalTerm], OrdinalTerm]) -> Formula:
    """Apply ``fn`` to every binder annotation."""
    if isinstance(f, (Top, FixVar)):
        return f
    if isinstance(f, BinOp):
        return type(f)(map_annotations(f.left, fn), map_annotations(f.right, fn))
    return type(f)(fn(f.ann), map_annotations(f.body, fn))


def rename_ordinals(f: Formula, mapping: Mapping[OrdinalTerm, OrdinalTerm]) -> Formula:
    return map_annotations(f, lambda t: mapping.get(t, t))


def ordinal_vars(f: Formula) -> set[str]:
    out: set[str] = set()

    def go(g: Formula) -> None:
        if isinstance(g, BinOp):
            go(g.left)
            go(g.right)
        elif isinstance(g, Binder):
            if is_var(g.ann):
                out.add(g.ann)
            go(g.body)

    go(f)
    return out


def has_free_x(f: Formula) -> bool:
    if isinstance(f, FixVar):
        return True
    if isinstance(f, BinOp):
        return has_free_x(f.left) or has_free_x(f.right)
    return False  # Top, or a binder that shadows X


def subst_x(body: Formula, replacement: Formula) -> Formula:
    """``body[replacement/X]``; inner binders shadow X."""
    if isinstance(body, FixVar):
        return replacement
    if isinstance(body, BinOp):
        return type(body)(subst_x(body.left, replacement), subst_x(body.right, replacement))
    return body


def strictly_positive(body: Formula) -> bool:
    """True iff X never occurs free in the antecedent of an implication."""
    if isinstance(body, (Top, FixVar)):
        return True
    if isinstance(body, Imp):
        return not has_free_x(body.left) and strictly_positive(body.left) and strictly_positive(body.right)
    if isinstance(body, BinOp):
        return strictly_positive(body.left) and strictly_positive(body.right)
    return strictly_positive(body.body)


def well_formed(f: Formula) -> None:
    """Raise if ``f`` is not a sentence of the restricted grammar."""
    if has_free_x(f):
        raise ScopeError(f"X occurs outside any binder in {show(f)}")

    def go(g: Formula) -> None:
        if isinstance(g, BinOp):
            go(g.left)
            go(g.right)
        elif isinstance(g, Binder):
            if not strictly_positive(g.body):
                raise PositivityError(f"binder body not strictly positive: {show(g)}")
            go(g.body)

    go(f)


class Classification(NamedTuple):
    is_pure: bool
    is_finitary: bool


def is_pure(f: Formula) -> bool:
    return not ordinal_vars(f)


def is_finitary(f: Formula) -> bool:
    if isinstance(f, (Top, FixVar)):
        return True
    if isinstance(f, (Or, And)):
        return is_finitary(f.left) and is_finitary(f.right)
    if isinstance(f, Mu):
        return is_finitary(f.body)
    return False


def classify(f: Formula) -> Classification:
    return Classification(is_pure(f), is_finitary(f))


def unfold_fixpoint(f: Formula, inner: OrdinalTerm) -> Formula:
    """Premise shape of a fixpoint rule: ``B[σ^inner X.B / X]``."""
    if not isinstance(f, Binder):
        raise ShapeError(f"not a fixpoint formula: {show(f)}")
    return subst_x(f.body, type(f)(inner, f.body))


def fix_with(f: Formula, ann: OrdinalTerm) -> Formula:
    """Same binder, different annotation."""
    if not isinstance(f, Binder):
        raise ShapeError(f"not a fixpoint formula: {show(f)}")
    return type(f)(ann, f.body)


# ---------------------------------------------------------------- printing

_PREC = {Imp: 0, Or: 1, And: 2}
_OPS = {Imp: "->", Or: "\\/", And: "/\\"}


def show(f: Formula) -> str:
    return _show(f, 0, True)


def _show(f: Formula, prec: int, rightmost: bool) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, FixVar):
        return "X"
    if isinstance(f, Binder):
        kw = "mu" if isinstance(f, Mu) else "nu"
        s = f"{kw}[{f.ann}]X. {_show(f.body, 0, True)}"
        return s if rightmost else f"({s})"
    p = _PREC[type(f)]
    if isinstance(f, Imp):
        # right associative
        lhs = _show(f.left, p + 1, False)
        rhs = _show(f.right, p, rightmost or p < prec)
    else:
        lhs = _show(f.left, p, False)
        rhs = _show(f.right, p + 1, rightmost or p < prec)
    s = f"{lhs} {_OPS[type(f)]} {rhs}"
    return s if p >= prec else f"({s})"


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<op>\\/|/\\|->|\(|\)|\[|\]|\.|,)|(?P<id>[A-Za-z_][A-Za-z0-9_']*))"
)


class Abbrev(NamedTuple):
    """A named formula with at most one ordinal parameter."""

    param: str | None
    body: Formula

    def instantiate(self, arg: OrdinalTerm | None) -> Formula:
        if self.param is None:
            return self.body
        return rename_ordinals(self.body, {self.param: arg})


def tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos}")
        out.append(m.group("op") or m.group("id"))
        pos = m.end()
    return out


class _FormulaParser:
    def __init__(self, tokens: list[str], abbrevs: Mapping[str, Abbrev]):
        self.toks = tokens
        self.i = 0
        self.abbrevs = abbrevs

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def imp(self) -> Formula:
        lhs = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(lhs, self.imp())
        return lhs

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "\\/":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.atom()
        while self.peek() == "/\\":
            self.take()
            f = And(f, self.atom())
        return f

    def ordinal(self) -> str:
        self.take("[")
        t = check_ordinal(self.take())
        self.take("]")
        return t

    def atom(self) -> Formula:
        tok = self.take()
        if tok == "(":
            f = self.imp()
            self.take(")")
            return f
        if tok == "T":
            return TOP
        if tok == "X":
            return X
        if tok in ("mu", "nu"):
            ann = self.ordinal()
            self.take("X")
            self.take(".")
            body = self.imp()  # binder scope extends maximally right
            return Mu(ann, body) if tok == "mu" else Nu(ann, body)
        if tok in self.abbrevs:
            ab = self.abbrevs[tok]
            arg = self.ordinal() if ab.param is not None else None
            return ab.instantiate(arg)
        raise ParseError(f"unexpected token {tok!r}")


def parse_formula(text: str, abbrevs: Mapping[str, Abbrev] | None = None) -> Formula:
    p = _FormulaParser(tokenize(text), abbrevs or {})
    f = p.imp()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    well_formed(f)
    return f


def parse_open_formula(text: str, abbrevs: Mapping[str, Abbrev] | None = None) -> Formula:
    """Parse a functor body: X may occur free but must be strictly positive."""
    p = _FormulaParser(tokenize(text), abbrevs or {})
    f = p.imp()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    if not strictly_positive(f):
        raise PositivityError(f"functor body not strictly positive: {show(f)}")
    well_formed(subst_x(f, TOP))
    return f


def nat_type(ann: OrdinalTerm = INF) -> Mu:
    return Mu(ann, Or(TOP, X))


def stream_type(elem: Formula, ann: OrdinalTerm = INF) -> Nu:
    return Nu(ann, And(elem, X))


def list_type(elem: Formula, ann: OrdinalTerm = INF) -> Mu:
    return Mu(ann, Or(TOP, And(elem, X)))


N = nat_type()
