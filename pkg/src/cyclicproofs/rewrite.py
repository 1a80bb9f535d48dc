"""Ordinal substitution, cut reduction and permutation, and fuelled reduction.

Rules fire on closed cuts (trivial constraint, empty context), which is
where evaluation happens.  A matching cut is eligible only when no other
matching closed cut sits strictly inside its premises.  Besides the eight
reductions and five right permutations there is one extra rule,
``CutPerm``, which pushes the minors of a cut into a cut standing as its
main premise; without it a closed cut whose main premise is a cut is stuck.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Sequence

from .constraints import chain, subst_top
from .errors import NotARedex, NotChildOfRoot, UnknownTerm
from .kernel import ProofGraph, Rule, Sequent, cut as cut_rule
from .syntax import INF
from .terms import (
    Built,
    Position,
    Term,
    View,
    as_term,
    fresh,
    ordinal_names,
    rename_ordinal,
    subst_inf,
    to_graph,
    unfold_head,
    widen,
)


class RewriteRuleId(str, Enum):
    OrRed = "OrRed"
    AndRed = "AndRed"
    ImpRed = "ImpRed"
    MuRed = "MuRed"
    NuRed = "NuRed"
    IdRed = "IdRed"
    ContrRed = "ContrRed"
    WeakRed = "WeakRed"
    PermOrR = "PermOrR"
    PermAndR = "PermAndR"
    PermImpR = "PermImpR"
    PermMuR = "PermMuR"
    PermNuR = "PermNuR"
    CutPerm = "CutPerm"

    def __str__(self) -> str:
        return self.value


class Redex(NamedTuple):
    position: Position
    rule: RewriteRuleId


# ---------------------------------------------------------------- substitution


def subst_ordinal(u, a: str):
    """``u[a:=inf]`` for a root-level child ``a`` of ``inf``."""
    o = as_term(u).sequent.constraint
    if a not in o.vars:
        raise UnknownTerm(f"{a!r} does not occur in the root constraint")
    if o.parent(a) != INF:
        raise NotChildOfRoot(f"{a!r} is not a child of inf")
    out = subst_inf(as_term(u), a)
    return to_graph(out, getattr(u, "name", "")) if isinstance(u, ProofGraph) else out


def saturate_infty(u, order: Sequence[str] | None = None):
    """Eliminate every variable of the root constraint, children of inf first."""
    t = as_term(u)
    if t.sequent.constraint.is_trivial():
        return u
    while True:
        o = t.sequent.constraint
        if o.is_trivial():
            break
        kids = o.children(INF)
        if order:
            pick = next((a for a in order if a in kids), kids[0])
        else:
            pick = kids[0]
        t = subst_inf(t, pick)
    return to_graph(t, getattr(u, "name", "")) if isinstance(u, ProofGraph) else t


# ---------------------------------------------------------------- matching

_RIGHT_PERM = {"OrR": RewriteRuleId.PermOrR, "AndR": RewriteRuleId.PermAndR, "ImpR": RewriteRuleId.PermImpR,
               "MuR": RewriteRuleId.PermMuR, "NuR": RewriteRuleId.PermNuR}
_PAIRS = {"OrL": ("OrR", RewriteRuleId.OrRed), "AndL": ("AndR", RewriteRuleId.AndRed),
          "ImpL": ("ImpR", RewriteRuleId.ImpRed), "MuL": ("MuR", RewriteRuleId.MuRed),
          "NuL": ("NuR", RewriteRuleId.NuRed)}


def _is_closed(s: Sequent) -> bool:
    return not s.context and s.constraint.is_trivial()


def match(node: Built) -> RewriteRuleId | None:
    """Rule applicable at a closed cut ``node`` (already head-unfolded)."""
    r = node.rule
    if r.kind != "Cut" or not _is_closed(node.sequent):
        return None
    minors = dict(zip(r.binds, node.premises[:-1]))
    main = unfold_head(node.premises[-1])
    k = main.rule.kind
    if k == "Cut":
        return RewriteRuleId.CutPerm
    if k in _RIGHT_PERM:
        if k == "MuR" and (main.rule.outer, main.rule.inner) != (INF, INF):
            return None
        if k == "NuR" and main.rule.outer != INF:
            return None
        return _RIGHT_PERM[k]
    if k == "Id":
        return RewriteRuleId.IdRed if main.rule.principal in minors else None
    if k == "Weak":
        return RewriteRuleId.WeakRed if main.rule.principal in minors else None
    if k == "Contr":
        return RewriteRuleId.ContrRed if main.rule.principal in minors else None
    if k in _PAIRS:
        y = main.rule.principal
        if y not in minors:
            return None
        want, rid = _PAIRS[k]
        other = unfold_head(minors[y])
        if other.rule.kind != want:
            return None
        if k == "MuL" and (main.rule.outer != INF or (other.rule.outer, other.rule.inner) != (INF, INF)):
            return None
        if k == "NuL" and ((main.rule.outer, main.rule.inner) != (INF, INF) or other.rule.outer != INF):
            return None
        return rid
    return None


# ---------------------------------------------------------------- construction


def mk_cut(minors: Sequence[tuple[str, Term]], main: Term) -> Term:
    """Multicut binding each name to its minor; no minors gives ``main``."""
    if not minors:
        return main
    ms = main.sequent
    bound = {z for z, _ in minors}
    ctx = [h for _, m in minors for h in m.sequent.context]
    ctx += [(n, f) for n, f in ms.context if n not in bound]
    seq = Sequent(ms.constraint, tuple(ctx), ms.conclusion)
    return Built(seq, cut_rule(*(z for z, _ in minors)), tuple(m for _, m in minors) + (main,))


def _restrict(minors: Sequence[tuple[str, Term]], names) -> list[tuple[str, Term]]:
    names = set(names)
    return [(z, m) for z, m in minors if z in names]


def rewrite_at(node: Built, rid: RewriteRuleId) -> Term:
    """Contract the redex ``node`` by rule ``rid``."""
    r = node.rule
    minors = list(zip(r.binds, node.premises[:-1]))
    main = unfold_head(node.premises[-1])
    mr = main.rule
    seq = node.sequent

    def others(y: str) -> list[tuple[str, Term]]:
        return [(z, m) for z, m in minors if z != y]

    def minor(y: str) -> Term:
        return dict(minors)[y]

    if rid is RewriteRuleId.IdRed:
        return minor(mr.principal)
    if rid is RewriteRuleId.WeakRed:
        return mk_cut(others(mr.principal), main.premises[0])
    if rid is RewriteRuleId.ContrRed:
        y, (z0, z1) = mr.principal, mr.binds
        m = minor(y)
        return mk_cut(others(y) + [(z0, m), (z1, m)], main.premises[0])
    if rid is RewriteRuleId.OrRed:
        y = mr.principal
        v = unfold_head(minor(y))
        i = v.rule.index
        return mk_cut(others(y) + [(mr.binds[i], v.premises[0])], main.premises[i])
    if rid is RewriteRuleId.AndRed:
        y = mr.principal
        v = unfold_head(minor(y))
        z0, z1 = mr.binds
        return mk_cut(others(y) + [(z0, v.premises[0]), (z1, v.premises[1])], main.premises[0])
    if rid is RewriteRuleId.ImpRed:
        z0 = mr.principal
        (z1,) = mr.binds
        lam = unfold_head(minor(z0))
        (x,) = lam.rule.binds
        w0, w1 = main.premises
        rest = others(z0)
        arg = mk_cut(_restrict(rest, w0.sequent.names), w0)
        body = mk_cut([(x, arg)], lam.premises[0])
        return mk_cut(_restrict(rest, w1.sequent.names) + [(z1, body)], w1)
    if rid is RewriteRuleId.MuRed:
        y = mr.principal
        v = unfold_head(minor(y))
        (z,) = mr.binds
        return mk_cut(others(y) + [(z, v.premises[0])], subst_inf(main.premises[0], mr.eigen))
    if rid is RewriteRuleId.NuRed:
        y = mr.principal
        v = unfold_head(minor(y))
        (z,) = mr.binds
        return mk_cut(others(y) + [(z, subst_inf(v.premises[0], v.rule.eigen))], main.premises[0])
    if rid in (RewriteRuleId.PermOrR, RewriteRuleId.PermMuR, RewriteRuleId.PermImpR):
        return Built(seq, mr, (mk_cut(minors, main.premises[0]),))
    if rid is RewriteRuleId.PermAndR:
        v0, v1 = main.premises
        return Built(seq, mr, (mk_cut(_restrict(minors, v0.sequent.names), v0),
                               mk_cut(_restrict(minors, v1.sequent.names), v1)))
    if rid is RewriteRuleId.PermNuR:
        a = mr.eigen
        body = main.premises[0]
        taken = set()
        for _, m in minors:
            taken |= ordinal_names(m)
        if a in taken:
            b = fresh(a)
            body = rename_ordinal(body, a, b)
            mr = Rule(mr.kind, outer=mr.outer, eigen=b)
            a = b
        carried = [(z, widen(m, chain(a))) for z, m in minors]
        return Built(seq, mr, (mk_cut(carried, body),))
    if rid is RewriteRuleId.CutPerm:
        xs = mr.binds
        *us, v = main.premises
        new_minors = []
        for x, u in zip(xs, us):
            new_minors.append((x, mk_cut(_restrict(minors, u.sequent.names), u)))
        # the inner cut may rebind a name of the outer one
        delta = [(z, m) for z, m in minors if z not in xs and v.sequent.lookup(z) is not None]
        return mk_cut(new_minors + delta, v)
    raise NotARedex(str(rid))


# ---------------------------------------------------------------- search


class SearchBudgetExceeded(RuntimeError):
    pass


def find_redexes(u, budget: int = 2_000_000) -> list[Redex]:
    """Eligible redexes in pre-order (leftmost first)."""
    out: list[Redex] = []
    count = [0]

    def scan(t: Term, pos: Position) -> bool:
        if not t.sequent.constraint.is_trivial():
            return False
        count[0] += 1
        if count[0] > budget:
            raise SearchBudgetExceeded("redex search did not terminate; is the proof valid?")
        h = unfold_head(t)
        mark = len(out)
        inner = False
        for i, p in enumerate(h.premises):
            inner = scan(p, pos + (i,)) or inner
        rid = match(h)
        if rid is not None:
            if not inner:
                del out[mark:]
                out.append(Redex(pos, rid))
            return True
        return inner

    scan(as_term(u), ())
    return out


def _apply(t: Term, r: Redex) -> Term:
    def go(u: Term, pos: Position) -> Term:
        h = unfold_head(u)
        if not pos:
            rid = match(h)
            if rid != r.rule:
                raise NotARedex(f"{r.rule} does not apply at {r.position}")
            return rewrite_at(h, rid)
        i = pos[0]
        if i >= len(h.premises):
            raise NotARedex(f"no position {r.position}")
        prems = list(h.premises)
        prems[i] = go(prems[i], pos[1:])
        return Built(h.sequent, h.rule, tuple(prems))

    return go(t, tuple(r.position))


def apply_step(u, r: Redex):
    if isinstance(u, ProofGraph):
        return to_graph(_apply(as_term(u), r), u.name)
    return _apply(u, r)


# ---------------------------------------------------------------- reduction

Strategy = Callable[[list[Redex]], Redex]


def leftmost(rs: list[Redex]) -> Redex:
    return rs[0]


def rightmost(rs: list[Redex]) -> Redex:
    return rs[-1]


def random_strategy(seed: int) -> Strategy:
    rng = random.Random(seed)
    return lambda rs: rs[rng.randrange(len(rs))]


@dataclass
class Reduction:
    status: str  # "Normal" or "OutOfFuel"
    proof: object
    steps: int
    trace: list[Redex] = field(default_factory=list)

    @property
    def normal(self) -> bool:
        return self.status == "Normal"


def reduce(u, fuel: int = 1_000_000, strategy: Strategy = leftmost, trace: bool = True) -> Reduction:
    t = as_term(u)
    log: list[Redex] = []
    steps = 0
    while True:
        rs = find_redexes(t)
        if not rs:
            status = "Normal"
            break
        if steps >= fuel:
            status = "OutOfFuel"
            break
        r = strategy(rs)
        t = _apply(t, r)
        steps += 1
        if trace:
            log.append(r)
    proof = to_graph(t, u.name) if isinstance(u, ProofGraph) else t
    return Reduction(status, proof, steps, log)
