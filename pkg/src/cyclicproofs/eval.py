"""Running proofs as programs: data values, numeric functions, stream
observation and bounded observational equivalence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import ArityMismatch, NonCanonical, NotNormal, NotStreamType, OutOfFuel, ShapeMismatch
from .kernel import (
    Back,
    ProofGraph,
    Step,
    Sequent,
    and_l,
    and_r,
    ax_top,
    id_rule,
    mu_r,
    nu_l,
    nu_r,
    or_r,
    weak,
)
from .constraints import TRIVIAL, chain, union
from .rewrite import Strategy, leftmost, mk_cut, reduce
from .syntax import INF, And, Formula, Mu, N, Nu, Or, Top, fix_with, has_free_x, is_finitary, show, unfold_fixpoint
from .terms import Built, Term, as_term, subst_inf, to_graph, unfold_head

# ---------------------------------------------------------------- values


@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return "unit"


@dataclass(frozen=True)
class Inl:
    value: "Value"

    def __str__(self) -> str:
        return f"inl({self.value})"


@dataclass(frozen=True)
class Inr:
    value: "Value"

    def __str__(self) -> str:
        return f"inr({self.value})"


@dataclass(frozen=True)
class Pair:
    left: "Value"
    right: "Value"

    def __str__(self) -> str:
        return f"({self.left}, {self.right})"


@dataclass(frozen=True)
class Fold:
    value: "Value"

    def __str__(self) -> str:
        return f"fold({self.value})"


Value = Union[Unit, Inl, Inr, Pair, Fold]


def nat(k: int) -> Value:
    v: Value = Fold(Inl(Unit()))
    for _ in range(k):
        v = Fold(Inr(v))
    return v


def nat_of(v: Value) -> int:
    k = 0
    while True:
        if not isinstance(v, Fold):
            raise ShapeMismatch(f"not a numeral: {v}")
        inner = v.value
        if isinstance(inner, Inl) and isinstance(inner.value, Unit):
            return k
        if not isinstance(inner, Inr):
            raise ShapeMismatch(f"not a numeral: {v}")
        k += 1
        v = inner.value


def list_value(items: Sequence[Value]) -> Value:
    v: Value = Fold(Inl(Unit()))
    for x in reversed(items):
        v = Fold(Inr(Pair(x, v)))
    return v


def show_value(v: Value, ty: Formula | None = None) -> str:
    """Numerals print as integers when the type says so (or the shape fits)."""
    try:
        return str(nat_of(v))
    except ShapeMismatch:
        return str(v)


# ---------------------------------------------------------------- encoding


def encode_term(v: Value, ty: Formula) -> Built:
    seq = Sequent(TRIVIAL, (), ty)
    if isinstance(ty, Top) and isinstance(v, Unit):
        return Built(seq, ax_top(), ())
    if isinstance(ty, Or) and isinstance(v, (Inl, Inr)):
        i = 0 if isinstance(v, Inl) else 1
        return Built(seq, or_r(i), (encode_term(v.value, (ty.left, ty.right)[i]),))
    if isinstance(ty, And) and isinstance(v, Pair):
        return Built(seq, and_r(), (encode_term(v.left, ty.left), encode_term(v.right, ty.right)))
    if isinstance(ty, Mu) and isinstance(v, Fold):
        if ty.ann != INF:
            raise ShapeMismatch(f"closed data needs an inf annotation: {show(ty)}")
        return Built(seq, mu_r(INF, INF), (encode_term(v.value, unfold_fixpoint(ty, INF)),))
    raise ShapeMismatch(f"{v} does not fit {show(ty)}")


def encode_value(v: Value, ty: Formula) -> ProofGraph:
    return to_graph(encode_term(v, ty))


def encode_nat(k: int) -> ProofGraph:
    return encode_value(nat(k), N)


def value_of(u, ty: Formula | None = None) -> Value:
    """Decode a normal closed proof of finitary type."""
    t = as_term(u)

    def go(t: Term) -> Value:
        h = unfold_head(t)
        k = h.rule.kind
        if k == "Cut":
            raise NotNormal("a cut remains")
        if k == "AxTop":
            return Unit()
        if k == "OrR":
            inner = go(h.premises[0])
            return Inl(inner) if h.rule.index == 0 else Inr(inner)
        if k == "AndR":
            return Pair(go(h.premises[0]), go(h.premises[1]))
        if k == "MuR":
            return Fold(go(h.premises[0]))
        raise NonCanonical(f"{k} heads a subproof of closed data")

    if ty is not None and t.sequent.conclusion != ty:
        raise ShapeMismatch(f"proof concludes {show(t.sequent.conclusion)}, not {show(ty)}")
    return go(t)


# ---------------------------------------------------------------- running


def apply_args(u, args: Sequence) -> Term:
    """One multicut feeding ``args`` to the context of ``u`` in order."""
    t = as_term(u)
    ctx = t.sequent.context
    if len(args) != len(ctx):
        raise ArityMismatch(f"{len(ctx)} hypotheses, {len(args)} arguments")
    minors = []
    for (name, f), a in zip(ctx, args):
        a = as_term(a)
        if a.sequent.context or not a.sequent.constraint.is_trivial():
            raise ArityMismatch(f"argument for {name} is not closed")
        if a.sequent.conclusion != f:
            raise ShapeMismatch(f"argument for {name} proves {show(a.sequent.conclusion)}, not {show(f)}")
        minors.append((name, a))
    return mk_cut(minors, t)


def normalize(u, fuel: int = 1_000_000, strategy: Strategy = leftmost) -> Term:
    r = reduce(as_term(u), fuel, strategy, trace=False)
    if not r.normal:
        raise OutOfFuel(r.steps, r.proof)
    return r.proof


def run_function(u, nats: Sequence[int], fuel: int = 1_000_000, strategy: Strategy = leftmost) -> int:
    t = apply_args(u, [encode_term(nat(k), N) for k in nats])
    return nat_of(value_of(normalize(t, fuel, strategy)))


def run_values(u, values: Sequence[Value], fuel: int = 1_000_000, strategy: Strategy = leftmost) -> Value:
    t = as_term(u)
    args = [encode_term(v, f) for v, (_, f) in zip(values, t.sequent.context)]
    return value_of(normalize(apply_args(t, args), fuel, strategy))


# ---------------------------------------------------------------- streams


def stream_element_type(ty: Formula) -> Formula:
    if not (isinstance(ty, Nu) and isinstance(ty.body, And) and not has_free_x(ty.body.left)):
        raise NotStreamType(f"not a stream type: {show(ty)}")
    return ty.body.left


def observer(ty: Formula, index: int, name: str = "s") -> Built:
    """``s : ty |- C`` projecting the element at ``index`` out of a stream."""
    elem = stream_element_type(ty)
    cell = unfold_fixpoint(ty, INF)  # C /\ ty

    def go(i: int, s: str) -> Built:
        t, h, r = f"{s}_c", f"{s}_h", f"{s}_t"
        if i == 0:
            inner = Built(Sequent(TRIVIAL, ((h, elem), (r, ty)), elem), weak(r),
                          (Built(Sequent(TRIVIAL, ((h, elem),), elem), id_rule(h), ()),))
        else:
            rest = go(i - 1, r)
            inner = Built(Sequent(TRIVIAL, ((h, elem), (r, ty)), elem), weak(h), (rest,))
        split = Built(Sequent(TRIVIAL, ((t, cell),), elem), and_l(t, h, r), (inner,))
        return Built(Sequent(TRIVIAL, ((s, ty),), elem), nu_l(INF, INF, s, t), (split,))

    return go(index, name)


def observe_stream(u, index: int, fuel: int = 1_000_000, strategy: Strategy = leftmost) -> Value:
    t = as_term(u)
    if t.sequent.context or not t.sequent.constraint.is_trivial():
        raise NotStreamType("observation needs a closed proof")
    ty = t.sequent.conclusion
    obs = observer(ty, index)
    return value_of(normalize(mk_cut([("s", t)], obs), fuel, strategy))


# ---------------------------------------------------------------- equivalence


def values_up_to(ty: Formula, depth: int) -> list[Value]:
    """All values of finitary ``ty`` nesting at most ``depth + 1`` folds."""

    def go(f: Formula, d: int, env: dict) -> Iterator[Value]:
        if isinstance(f, Top):
            yield Unit()
        elif isinstance(f, Or):
            for v in go(f.left, d, env):
                yield Inl(v)
            for v in go(f.right, d, env):
                yield Inr(v)
        elif isinstance(f, And):
            for a, b in itertools.product(list(go(f.left, d, env)), list(go(f.right, d, env))):
                yield Pair(a, b)
        elif isinstance(f, Mu):
            if d < 0:
                return
            for v in go(unfold_fixpoint(f, INF), d - 1, env):
                yield Fold(v)
        else:
            raise ShapeMismatch(f"not finitary: {show(f)}")

    return list(go(ty, depth, {}))


def constant_stream(elem_proof: Term, ty: Formula) -> ProofGraph:
    """A one-cycle proof of the stream repeating a closed element proof."""
    elem = stream_element_type(ty)
    o = chain("a")
    eg = to_graph(elem_proof)
    nodes: dict = {}
    nodes["r"] = Step(Sequent(TRIVIAL, (), ty), nu_r(INF, "a"), ("c",))
    nodes["c"] = Step(Sequent(o, (), And(elem, fix_with(ty, "a"))), and_r(), ("e0", "k"))
    for nid, n in eg.nodes.items():
        s = Sequent(union(n.sequent.constraint, o), n.sequent.context, n.sequent.conclusion)
        if isinstance(n, Step):
            nodes["e" + nid[1:]] = Step(s, n.rule, tuple("e" + p[1:] for p in n.premises))
        else:
            nodes["e" + nid[1:]] = Back(s, "e" + n.companion[1:], n.sigma)
    if eg.root != "n0":
        raise ShapeMismatch("unexpected element graph layout")
    # the cycle closes at c, so that no inf inside the element type is renamed
    ob = chain("b", "a")
    nodes["k"] = Step(Sequent(o, (), fix_with(ty, "a")), nu_r("a", "b"), ("l",))
    nodes["l"] = Back(Sequent(ob, (), And(elem, fix_with(ty, "b"))), "c", (("a", "b"),))
    return ProofGraph(nodes, "r")


def probes(ty: Formula, depth: int) -> list[Term]:
    """Closed canonical arguments of type ``ty`` used to test functions."""
    if is_finitary(ty):
        return [encode_term(v, ty) for v in values_up_to(ty, depth)]
    if isinstance(ty, Nu):
        elem = stream_element_type(ty)
        return [as_term(constant_stream(p, ty)) for p in probes(elem, depth)]
    seq = Sequent(TRIVIAL, (), ty)
    if isinstance(ty, And):
        return [Built(seq, and_r(), (x, y)) for x, y in itertools.product(probes(ty.left, depth), probes(ty.right, depth))]
    if isinstance(ty, Or):
        return ([Built(seq, or_r(0), (x,)) for x in probes(ty.left, depth)]
                + [Built(seq, or_r(1), (y,)) for y in probes(ty.right, depth)])
    raise ShapeMismatch(f"no probe set for {show(ty)}")


def obs_equiv(u, v, depth: int = 3, fuel: int = 1_000_000, ty: Formula | None = None) -> bool:
    """Bounded observational equivalence of two closed proofs."""
    a, b = as_term(u), as_term(v)
    if a.sequent.conclusion != b.sequent.conclusion:
        return False
    ctx_a, ctx_b = a.sequent.context, b.sequent.context
    if [f for _, f in ctx_a] != [f for _, f in ctx_b]:
        return False
    if ctx_a:
        # arrows are compared pointwise on canonical arguments
        for args in itertools.product(*(probes(f, depth) for _, f in ctx_a)):
            if not obs_equiv(apply_args(a, args), apply_args(b, args), depth, fuel, ty):
                return False
        return True
    if ty is None:
        ty = a.sequent.conclusion
    budget = [fuel]

    def whnf(t: Term) -> Built:
        r = reduce(t, budget[0], trace=False)
        budget[0] -= r.steps
        if not r.normal:
            raise OutOfFuel(fuel - budget[0], r.proof)
        return unfold_head(r.proof)

    def same(x: Term, y: Term, f: Formula, d: int) -> bool:
        if isinstance(f, Top):
            return True
        if isinstance(f, Nu) and d <= 0:
            return True
        hx, hy = whnf(x), whnf(y)
        if hx.rule.kind != hy.rule.kind:
            return False
        k = hx.rule.kind
        if k == "OrR":
            if hx.rule.index != hy.rule.index:
                return False
            return same(hx.premises[0], hy.premises[0], (f.left, f.right)[hx.rule.index], d)
        if k == "AndR":
            return same(hx.premises[0], hy.premises[0], f.left, d) and same(hx.premises[1], hy.premises[1], f.right, d)
        if k == "MuR":
            return same(hx.premises[0], hy.premises[0], unfold_fixpoint(f, INF), d)
        if k == "NuR":
            px = subst_inf(hx.premises[0], hx.rule.eigen)
            py = subst_inf(hy.premises[0], hy.rule.eigen)
            return same(px, py, unfold_fixpoint(f, INF), d - 1)
        if k == "ImpR":
            (vx,), (vy,) = hx.rule.binds, hy.rule.binds
            for p in probes(f.left, depth):
                if not same(mk_cut([(vx, p)], hx.premises[0]), mk_cut([(vy, p)], hy.premises[0]), f.right, d):
                    return False
            return True
        raise NonCanonical(f"{k} heads a closed normal proof")

    return same(a, b, ty, depth)


def compose(u, v) -> Term:
    """``v`` after ``u``: feed the conclusion of ``u`` to the single hypothesis of ``v``."""
    t, w = as_term(u), as_term(v)
    if len(w.sequent.context) != 1:
        raise ArityMismatch("composition needs a one-hypothesis proof on the right")
    (name, f), = w.sequent.context
    if t.sequent.conclusion != f:
        raise ShapeMismatch(f"{show(t.sequent.conclusion)} does not match {show(f)}")
    return mk_cut([(name, t)], w)


def id_proof(ty: Formula, name: str = "x") -> Built:
    return Built(Sequent(TRIVIAL, ((name, ty),), ty), id_rule(name), ())


__all__ = [
    "Unit", "Inl", "Inr", "Pair", "Fold", "Value", "nat", "nat_of", "list_value", "show_value",
    "encode_term", "encode_value", "encode_nat", "value_of", "apply_args", "normalize", "run_function",
    "run_values", "observer", "observe_stream", "values_up_to", "probes", "obs_equiv", "compose",
    "id_proof", "constant_stream", "stream_element_type",
]
