"""Sequents, rule instances, cyclic proof graphs and their local checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .constraints import TRIVIAL, Constraint, entails, extend, show_constraint
from .errors import CyclicProofError, KernelError
from .syntax import (
    INF,
    TOP,
    And,
    Formula,
    Imp,
    Mu,
    Nu,
    Or,
    Top,
    is_var,
    ordinal_vars,
    rename_ordinals,
    show,
    unfold_fixpoint,
)

Context = tuple[tuple[str, Formula], ...]


@dataclass(frozen=True)
class Sequent:
    constraint: Constraint
    context: Context
    conclusion: Formula

    def __post_init__(self):
        object.__setattr__(self, "context", tuple((n, f) for n, f in self.context))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.context)

    def lookup(self, name: str) -> Formula | None:
        for n, f in self.context:
            if n == name:
                return f
        return None

    def ctx_dict(self) -> dict[str, Formula]:
        return dict(self.context)

    def is_closed(self) -> bool:
        return self.constraint.is_trivial() and not self.context

    def __str__(self) -> str:
        return show_sequent(self)


def sequent(conclusion: Formula, context: Iterable[tuple[str, Formula]] = (), constraint: Constraint = TRIVIAL) -> Sequent:
    return Sequent(constraint, tuple(context), conclusion)


def show_sequent(s: Sequent) -> str:
    ctx = ", ".join(f"{n} : {show(f)}" for n, f in s.context)
    lhs = show_constraint(s.constraint)
    parts = []
    if lhs:
        parts.append(lhs + " ;")
    if ctx:
        parts.append(ctx)
    parts.append("|- " + show(s.conclusion))
    return " ".join(parts)


def free_ordinal_vars(s: Sequent) -> set[str]:
    out = ordinal_vars(s.conclusion)
    for _, f in s.context:
        out |= ordinal_vars(f)
    return out


def check_sequent(s: Sequent) -> None:
    names = s.names
    if len(set(names)) != len(names):
        raise KernelError("DuplicateName", f"context names {names}")
    missing = free_ordinal_vars(s) - s.constraint.vars
    if missing:
        raise KernelError("UnknownTerm", f"variables {sorted(missing)} not in the constraint")


def rename_sequent(s: Sequent, rho: Mapping[str, str], pi: Mapping[str, str] | None = None,
                   constraint: Constraint | None = None) -> Sequent:
    """Rename ordinals by ``rho`` and term names by ``pi``."""
    pi = pi or {}
    return Sequent(
        s.constraint if constraint is None else constraint,
        tuple((pi.get(n, n), rename_ordinals(f, rho)) for n, f in s.context),
        rename_ordinals(s.conclusion, rho),
    )


# ---------------------------------------------------------------- rules

RULE_KINDS = (
    "AxTop", "Id", "OrR", "OrL", "AndR", "AndL", "ImpR", "ImpL",
    "MuR", "MuL", "NuR", "NuL", "Weak", "Contr", "Cut",
)


@dataclass(frozen=True)
class Rule:
    """One rule instance with the names carried by its proof-term constructor.

    ``principal`` is the context variable a left rule acts on, ``binds`` the
    names it introduces (for ``Cut`` the cut variables z1..zn).
    """

    kind: str
    index: int | None = None
    outer: str | None = None
    inner: str | None = None
    eigen: str | None = None
    principal: str | None = None
    binds: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise KernelError("UnknownRule", self.kind)
        object.__setattr__(self, "binds", tuple(self.binds))

    def arity(self) -> int:
        return {
            "AxTop": 0, "Id": 0, "OrL": 2, "AndR": 2, "ImpL": 2,
        }.get(self.kind, len(self.binds) + 1 if self.kind == "Cut" else 1)

    def ordinals(self) -> tuple[str, ...]:
        return tuple(t for t in (self.outer, self.inner) if t is not None)

    def map_ordinals(self, fn) -> "Rule":
        return Rule(self.kind, self.index,
                    None if self.outer is None else fn(self.outer),
                    None if self.inner is None else fn(self.inner),
                    None if self.eigen is None else fn(self.eigen),
                    self.principal, self.binds)

    def map_names(self, fn) -> "Rule":
        return Rule(self.kind, self.index, self.outer, self.inner, self.eigen,
                    None if self.principal is None else fn(self.principal),
                    tuple(fn(b) for b in self.binds))

    def __str__(self) -> str:
        return show_rule(self)


def ax_top() -> Rule: return Rule("AxTop")
def id_rule(x: str) -> Rule: return Rule("Id", principal=x)
def or_r(i: int) -> Rule: return Rule("OrR", index=i)
def or_l(y: str, z0: str, z1: str) -> Rule: return Rule("OrL", principal=y, binds=(z0, z1))
def and_r() -> Rule: return Rule("AndR")
def and_l(y: str, z0: str, z1: str) -> Rule: return Rule("AndL", principal=y, binds=(z0, z1))
def imp_r(y: str) -> Rule: return Rule("ImpR", binds=(y,))
def imp_l(z: str, y: str) -> Rule: return Rule("ImpL", principal=z, binds=(y,))
def mu_r(outer: str, inner: str) -> Rule: return Rule("MuR", outer=outer, inner=inner)
def mu_l(outer: str, b: str, y: str, z: str) -> Rule: return Rule("MuL", outer=outer, eigen=b, principal=y, binds=(z,))
def nu_r(outer: str, b: str) -> Rule: return Rule("NuR", outer=outer, eigen=b)
def nu_l(outer: str, inner: str, y: str, z: str) -> Rule: return Rule("NuL", outer=outer, inner=inner, principal=y, binds=(z,))
def weak(y: str) -> Rule: return Rule("Weak", principal=y)
def contr(y: str, z0: str, z1: str) -> Rule: return Rule("Contr", principal=y, binds=(z0, z1))
def cut(*zs: str) -> Rule: return Rule("Cut", binds=tuple(zs))


_TEXT_NAMES = {
    "AxTop": "axT", "Id": "id", "OrR": "orR", "OrL": "orL", "AndR": "andR", "AndL": "andL",
    "ImpR": "impR", "ImpL": "impL", "MuR": "muR", "MuL": "muL", "NuR": "nuR", "NuL": "nuL",
    "Weak": "weak", "Contr": "contr", "Cut": "cut",
}


def rule_args(r: Rule) -> list[str]:
    """Arguments in term-constructor order, as written in proof files."""
    k = r.kind
    if k in ("AxTop", "AndR"):
        return []
    if k == "OrR":
        return [str(r.index)]
    if k in ("Id", "Weak"):
        return [r.principal]
    if k in ("OrL", "AndL", "Contr", "ImpL"):
        return [r.principal, *r.binds]
    if k in ("ImpR", "Cut"):
        return list(r.binds)
    if k == "MuR":
        return [r.outer, r.inner]
    if k == "NuR":
        return [r.outer, r.eigen]
    if k == "MuL":
        return [r.outer, r.eigen, r.principal, *r.binds]
    if k == "NuL":
        return [r.outer, r.inner, r.principal, *r.binds]
    raise AssertionError(k)


def show_rule(r: Rule) -> str:
    args = rule_args(r)
    return _TEXT_NAMES[r.kind] + (f"({', '.join(args)})" if args else "")


def rule_from_text(name: str, args: Sequence[str]) -> Rule:
    inv = {v: k for k, v in _TEXT_NAMES.items()}
    if name not in inv:
        raise KernelError("UnknownRule", name)
    k = inv[name]
    expected = {
        "AxTop": 0, "AndR": 0, "OrR": 1, "Id": 1, "Weak": 1, "OrL": 3, "AndL": 3,
        "Contr": 3, "ImpL": 2, "ImpR": 1, "MuR": 2, "NuR": 2, "MuL": 4, "NuL": 4,
    }
    if k == "Cut":
        if not args:
            raise KernelError("RuleArity", "cut needs at least one variable")
        return cut(*args)
    if len(args) != expected[k]:
        raise KernelError("RuleArity", f"{name} takes {expected[k]} arguments, got {len(args)}")
    a = list(args)
    if k == "OrR":
        if a[0] not in ("0", "1"):
            raise KernelError("BadIndex", a[0])
        return or_r(int(a[0]))
    return {
        "AxTop": lambda: ax_top(), "AndR": lambda: and_r(), "Id": lambda: id_rule(a[0]),
        "Weak": lambda: weak(a[0]), "OrL": lambda: or_l(*a), "AndL": lambda: and_l(*a),
        "Contr": lambda: contr(*a), "ImpL": lambda: imp_l(*a), "ImpR": lambda: imp_r(a[0]),
        "MuR": lambda: mu_r(*a), "NuR": lambda: nu_r(*a), "MuL": lambda: mu_l(*a),
        "NuL": lambda: nu_l(*a),
    }[k]()


# ---------------------------------------------------------------- local check


def _ctx_counter(ctx: Iterable[tuple[str, Formula]]) -> Counter:
    return Counter(ctx)


def _without(s: Sequent, y: str) -> tuple[Formula, list[tuple[str, Formula]]]:
    f = s.lookup(y)
    if f is None:
        raise KernelError("PrincipalMissing", f"{y} not in context")
    return f, [(n, g) for n, g in s.context if n != y]


def _expect_premise(p: Sequent, o: Constraint, ctx: Iterable[tuple[str, Formula]], concl: Formula, which: str = "") -> None:
    if p.constraint != o:
        raise KernelError("PremiseConstraint", f"{which}expected {show_constraint(o)!r}, got {show_constraint(p.constraint)!r}")
    if _ctx_counter(p.context) != _ctx_counter(ctx):
        raise KernelError("PremiseContext", f"{which}context does not match")
    if p.conclusion != concl:
        raise KernelError("PremiseConclusion", f"{which}expected {show(concl)}, got {show(p.conclusion)}")


def _fresh_names(names: Iterable[str], taken: Iterable[str]) -> None:
    names = list(names)
    if len(set(names)) != len(names) or set(names) & set(taken):
        raise KernelError("NameClash", f"introduced names {names} clash")


def _need_terms(o: Constraint, *ts: str) -> None:
    for t in ts:
        if t not in o:
            raise KernelError("UnknownTerm", f"{t!r} not in constraint")


def _split(conclusion_ctx: Sequence[tuple[str, Formula]], parts: Sequence[Iterable[tuple[str, Formula]]]) -> None:
    total: Counter = Counter()
    for p in parts:
        total += _ctx_counter(p)
    if total != _ctx_counter(conclusion_ctx):
        raise KernelError("ContextSplit", "premise contexts do not partition the conclusion context")


def check_rule_instance(conclusion: Sequent, step: Rule, premises: Sequence[Sequent]) -> None:
    """Raise ``KernelError`` unless ``premises / conclusion`` is an instance of ``step``."""
    s = conclusion
    for p in (s, *premises):
        check_sequent(p)
    if len(premises) != step.arity():
        raise KernelError("PremiseCount", f"{step.kind} needs {step.arity()} premises, got {len(premises)}")
    o, c, k = s.constraint, s.conclusion, step.kind

    if k == "AxTop":
        if s.context:
            raise KernelError("ContextShape", "ax_T needs an empty context")
        if not isinstance(c, Top):
            raise KernelError("ConclusionShape", "ax_T proves T")
        return
    if k == "Id":
        if len(s.context) != 1 or s.context[0][0] != step.principal:
            raise KernelError("ContextShape", "id needs exactly the principal hypothesis")
        if s.context[0][1] != c:
            raise KernelError("ConclusionShape", "id hypothesis differs from conclusion")
        return
    if k == "OrR":
        if not isinstance(c, Or):
            raise KernelError("ConclusionShape", "orR needs a disjunction")
        if step.index not in (0, 1):
            raise KernelError("BadIndex", str(step.index))
        _expect_premise(premises[0], o, s.context, (c.left, c.right)[step.index])
        return
    if k == "AndR":
        if not isinstance(c, And):
            raise KernelError("ConclusionShape", "andR needs a conjunction")
        for p, f, w in zip(premises, (c.left, c.right), ("left: ", "right: ")):
            if p.constraint != o:
                raise KernelError("PremiseConstraint", w)
            if p.conclusion != f:
                raise KernelError("PremiseConclusion", w + show(f))
        _split(s.context, [p.context for p in premises])
        return
    if k == "ImpR":
        if not isinstance(c, Imp):
            raise KernelError("ConclusionShape", "impR needs an implication")
        (y,) = step.binds
        _fresh_names([y], s.names)
        _expect_premise(premises[0], o, [*s.context, (y, c.left)], c.right)
        return
    if k == "MuR" or k == "NuR":
        want = Mu if k == "MuR" else Nu
        if not isinstance(c, want):
            raise KernelError("ConclusionShape", f"{k} needs a {want.__name__} formula")
        if c.ann != step.outer:
            raise KernelError("AnnotationMismatch", f"{step.outer} vs {c.ann}")
        if k == "MuR":
            _need_terms(o, step.outer, step.inner)
            if not entails(o, step.inner, step.outer):
                raise KernelError("OrderViolation", f"{step.inner} < {step.outer} not entailed")
            _expect_premise(premises[0], o, s.context, unfold_fixpoint(c, step.inner))
        else:
            _need_terms(o, step.outer)
            if step.eigen in o or step.eigen is None or step.eigen == INF:
                raise KernelError("EigenClash", f"{step.eigen} occurs in the conclusion")
            _expect_premise(premises[0], extend(o, step.outer, step.eigen), s.context,
                            unfold_fixpoint(c, step.eigen))
        return
    if k == "Cut":
        zs = step.binds
        *minors, main = premises
        _fresh_names(zs, ())
        for m in minors:
            if m.constraint != o:
                raise KernelError("PremiseConstraint", "cut minor")
        if main.constraint != o:
            raise KernelError("PremiseConstraint", "cut main premise")
        mctx = main.ctx_dict()
        for z, m in zip(zs, minors):
            if mctx.get(z) != m.conclusion:
                raise KernelError("CutFormula", f"{z} does not carry the minor's conclusion")
        if c != main.conclusion:
            raise KernelError("PremiseConclusion", "cut main premise conclusion")
        delta = [(n, f) for n, f in main.context if n not in zs]
        _split(s.context, [*(m.context for m in minors), delta])
        return

    # left rules and structural rules act on a principal hypothesis
    a, rest = _without(s, step.principal)
    if k == "Weak":
        _expect_premise(premises[0], o, rest, c)
        return
    if k == "Contr":
        z0, z1 = step.binds
        _fresh_names([z0, z1], [n for n, _ in rest])
        _expect_premise(premises[0], o, [*rest, (z0, a), (z1, a)], c)
        return
    if k in ("OrL", "AndL"):
        want = Or if k == "OrL" else And
        if not isinstance(a, want):
            raise KernelError("PrincipalShape", f"{k} needs {want.__name__}")
        z0, z1 = step.binds
        if k == "OrL":
            _fresh_names([z0], [n for n, _ in rest])
            _fresh_names([z1], [n for n, _ in rest])
            _expect_premise(premises[0], o, [*rest, (z0, a.left)], c, "left: ")
            _expect_premise(premises[1], o, [*rest, (z1, a.right)], c, "right: ")
        else:
            _fresh_names([z0, z1], [n for n, _ in rest])
            _expect_premise(premises[0], o, [*rest, (z0, a.left), (z1, a.right)], c)
        return
    if k == "ImpL":
        if not isinstance(a, Imp):
            raise KernelError("PrincipalShape", "impL needs an implication")
        (y,) = step.binds
        p0, p1 = premises
        if p0.constraint != o or p1.constraint != o:
            raise KernelError("PremiseConstraint", "impL")
        if p0.conclusion != a.left:
            raise KernelError("PremiseConclusion", "impL antecedent")
        if p1.conclusion != c or p1.lookup(y) != a.right:
            raise KernelError("PremiseConclusion", "impL consequent")
        _fresh_names([y], [n for n, _ in rest])
        _split(rest, [p0.context, [(n, f) for n, f in p1.context if n != y]])
        return
    if k in ("MuL", "NuL"):
        want = Mu if k == "MuL" else Nu
        if not isinstance(a, want):
            raise KernelError("PrincipalShape", f"{k} needs a {want.__name__} hypothesis")
        if a.ann != step.outer:
            raise KernelError("AnnotationMismatch", f"{step.outer} vs {a.ann}")
        (z,) = step.binds
        _fresh_names([z], [n for n, _ in rest])
        if k == "NuL":
            _need_terms(o, step.outer, step.inner)
            if not entails(o, step.inner, step.outer):
                raise KernelError("OrderViolation", f"{step.inner} < {step.outer} not entailed")
            _expect_premise(premises[0], o, [*rest, (z, unfold_fixpoint(a, step.inner))], c)
        else:
            _need_terms(o, step.outer)
            if step.eigen in o or step.eigen is None or step.eigen == INF:
                raise KernelError("EigenClash", f"{step.eigen} occurs in the conclusion")
            _expect_premise(premises[0], extend(o, step.outer, step.eigen),
                            [*rest, (z, unfold_fixpoint(a, step.eigen))], c)
        return
    raise KernelError("UnknownRule", k)


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class Step:
    sequent: Sequent
    rule: Rule
    premises: tuple[str, ...]


@dataclass(frozen=True)
class Back:
    """A leaf that continues as its ``companion`` under the renaming ``sigma``.

    ``sigma`` maps companion ordinal terms to leaf terms; ``inf`` defaults to
    ``inf``.  Context hypotheses correspond by position.
    """

    sequent: Sequent
    companion: str
    sigma: tuple[tuple[str, str], ...]

    def sigma_map(self) -> dict[str, str]:
        d = dict(self.sigma)
        d.setdefault(INF, INF)
        return d


Node = Union[Step, Back]


@dataclass
class ProofGraph:
    nodes: dict[str, Node]
    root: str
    name: str = ""
    _parents: dict[str, str] | None = field(default=None, repr=False, compare=False)
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def conclusion(self) -> Sequent:
        return self.nodes[self.root].sequent

    def parents(self) -> dict[str, str]:
        if self._parents is None:
            par: dict[str, str] = {}
            for nid, n in self.nodes.items():
                if isinstance(n, Step):
                    for p in n.premises:
                        if p in par:
                            raise KernelError("NotATree", f"{p} has two parents", p)
                        par[p] = nid
            self._parents = par
        return self._parents

    def ancestors(self, nid: str) -> Iterator[str]:
        par = self.parents()
        seen = set()
        while nid in par:
            nid = par[nid]
            if nid in seen:
                raise KernelError("NotATree", "premise links contain a cycle", nid)
            seen.add(nid)
            yield nid

    def back_edges(self) -> list[str]:
        return [nid for nid, n in self.nodes.items() if isinstance(n, Back)]

    def companions(self) -> set[str]:
        return {self.nodes[b].companion for b in self.back_edges()}

    def subtree(self, nid: str) -> Iterator[str]:
        stack = [nid]
        while stack:
            n = stack.pop()
            yield n
            node = self.nodes[n]
            if isinstance(node, Step):
                stack.extend(reversed(node.premises))

    def preorder(self) -> list[str]:
        return list(self.subtree(self.root))

    def needed(self, c: str) -> frozenset[str]:
        key = ("needed", c)
        if key not in self._memo:
            self._memo[key] = frozenset(_needed(self, c))
        return self._memo[key]

    def __len__(self) -> int:
        return len(self.nodes)


def graph(nodes: Mapping[str, Node], root: str, name: str = "") -> ProofGraph:
    return ProofGraph(dict(nodes), root, name)


def _needed(g: ProofGraph, c: str) -> set[str]:
    """Companion variables that anything in its subtree refers to."""
    used: set[str] = set()
    for nid in g.subtree(c):
        n = g.nodes[nid]
        used |= free_ordinal_vars(n.sequent)
        if isinstance(n, Step):
            used.update(t for t in n.rule.ordinals() if is_var(t))
        else:
            used.update(t for _, t in n.sigma if is_var(t))
    return used & set(g.nodes[c].sequent.constraint.vars)


def _infinity_flags(g: ProofGraph) -> set[str]:
    """Nodes whose ``inf`` may stand for an ordinal variable after unfolding."""
    flagged: set[str] = set()
    changed = True
    while changed:
        changed = False
        for b in g.back_edges():
            node = g.nodes[b]
            s_inf = node.sigma_map()[INF]
            if node.companion in flagged:
                continue
            if is_var(s_inf) or b in flagged:
                flagged.update(g.subtree(node.companion))
                changed = True
    return flagged


def check_back_edge(g: ProofGraph, nid: str) -> None:
    node = g.nodes[nid]
    assert isinstance(node, Back)
    c = node.companion
    if c not in g.nodes:
        raise KernelError("UnknownNode", f"companion {c} undefined", nid)
    if c not in set(g.ancestors(nid)):
        raise KernelError("CompanionNotAncestor", f"{c} is not a proper ancestor", nid)
    comp, leaf = g.nodes[c].sequent, node.sequent
    keys = [k for k, _ in node.sigma]
    if len(set(keys)) != len(keys):
        raise KernelError("RenamingDomain", "a term is mapped twice", nid)
    sigma = node.sigma_map()
    for x, y in sigma.items():
        if x not in comp.constraint:
            raise KernelError("RenamingDomain", f"{x} is not a companion term", nid)
        if y not in leaf.constraint:
            raise KernelError("RenamingRange", f"{y} is not a leaf term", nid)
    missing = g.needed(c) - set(sigma)
    if missing:
        raise KernelError("RenamingIncomplete", f"no image for {sorted(missing)}", nid)
    if len(comp.context) != len(leaf.context):
        raise KernelError("BackEdgeMismatch", "context lengths differ", nid)
    image = rename_sequent(comp, sigma)
    for (_, f), (_, h) in zip(image.context, leaf.context):
        if f != h:
            raise KernelError("BackEdgeMismatch", f"{show(f)} vs {show(h)}", nid)
    if image.conclusion != leaf.conclusion:
        raise KernelError("BackEdgeMismatch", f"{show(image.conclusion)} vs {show(leaf.conclusion)}", nid)
    for x in sigma:
        for y in sigma:
            if x != y and entails(comp.constraint, x, y) and not entails(leaf.constraint, sigma[x], sigma[y]):
                raise KernelError("RenamingNotMonotone", f"{x} < {y} but not {sigma[x]} < {sigma[y]}", nid)


def check_graph(g: ProofGraph) -> None:
    """Raise ``KernelError`` (with the node id) on the first violation."""
    if g.root not in g.nodes:
        raise KernelError("UnknownNode", "root undefined", g.root)
    for nid, n in g.nodes.items():
        if isinstance(n, Step):
            for p in n.premises:
                if p not in g.nodes:
                    raise KernelError("UnknownNode", f"premise {p} undefined", nid)
    g._parents = None
    g._memo.clear()
    par = g.parents()
    if g.root in par:
        raise KernelError("NotATree", "root has a parent", g.root)
    reach = set(g.subtree(g.root))
    if reach != set(g.nodes):
        stray = sorted(set(g.nodes) - reach)[0]
        raise KernelError("NotATree", "node unreachable from the root", stray)
    for nid in g.preorder():
        n = g.nodes[nid]
        try:
            if isinstance(n, Step):
                check_rule_instance(n.sequent, n.rule, [g.nodes[p].sequent for p in n.premises])
            else:
                check_sequent(n.sequent)
                check_back_edge(g, nid)
        except KernelError as e:
            if e.node is None:
                raise KernelError(e.reason, e.detail, nid) from None
            raise
    flagged = _infinity_flags(g)
    for nid in sorted(flagged):
        n = g.nodes[nid]
        if isinstance(n, Step) and n.rule.kind in ("MuR", "NuL") and n.rule.inner == INF:
            raise KernelError("InfinityRealizedAsVariable",
                              "inf < inf is used where inf stands for a variable", nid)
        if isinstance(n, Back) and any(is_var(x) and y == INF for x, y in n.sigma_map().items()):
            raise KernelError("InfinityRealizedAsVariable",
                              "a variable is renamed to inf where inf stands for a variable", nid)


def is_well_formed(g: ProofGraph) -> bool:
    try:
        check_graph(g)
        return True
    except CyclicProofError:
        return False


# ---------------------------------------------------------------- unfolding


@dataclass(frozen=True)
class Derivation:
    """A finite prefix of an unfolded proof; ``rule`` is None at the frontier."""

    sequent: Sequent
    rule: Rule | None
    premises: tuple["Derivation", ...] = ()

    def nodes(self) -> Iterator["Derivation"]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    def branches(self) -> Iterator[list["Derivation"]]:
        if not self.premises:
            yield [self]
        for p in self.premises:
            for b in p.branches():
                yield [self, *b]


def unfold_prefix(g: ProofGraph, depth: int) -> Derivation:
    """Depth-``depth`` prefix of the infinite proof ``g`` represents."""
    from .terms import Built, root_view, unfold_head

    def go(t, d: int) -> Derivation:
        node = unfold_head(t)
        if d == 0:
            return Derivation(node.sequent, None)
        assert isinstance(node, Built)
        return Derivation(node.sequent, node.rule, tuple(go(p, d - 1) for p in node.premises))

    return go(root_view(g), depth)
