"""Random proof generators shared by the property and acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from hypothesis import strategies as st

from cyclicproofs import corpus
from cyclicproofs.constraints import TRIVIAL, Constraint, chain
from cyclicproofs.eval import apply_args, encode_term, nat, values_up_to
from cyclicproofs.kernel import Back, ProofGraph, Sequent, Step, and_r, ax_top, cut, id_rule, nu_r, or_r, weak
from cyclicproofs.rewrite import mk_cut
from cyclicproofs.syntax import INF, TOP, And, Imp, Mu, N, Nu, Or, X
from cyclicproofs.terms import Built, as_term

# ---------------------------------------------------------------- formulas


def _open(depth: int, anns: list[str]):
    leaf = st.sampled_from([TOP, X])
    if depth == 0:
        return leaf
    sub = _open(depth - 1, anns)
    closed = _closed(depth - 1, anns)
    return st.one_of(
        leaf,
        st.builds(Or, sub, sub),
        st.builds(And, sub, sub),
        st.builds(Imp, closed, sub),
    )


def _closed(depth: int, anns: list[str]):
    if depth == 0:
        return st.just(TOP)
    sub = _closed(depth - 1, anns)
    body = _open(depth - 1, anns)
    ann = st.sampled_from(anns)
    return st.one_of(
        st.just(TOP),
        st.builds(Or, sub, sub),
        st.builds(And, sub, sub),
        st.builds(Imp, sub, sub),
        st.builds(Mu, ann, body),
        st.builds(Nu, ann, body),
    )


def formulas(depth: int = 3, anns: tuple[str, ...] = (INF, "a", "b")):
    return _closed(depth, list(anns))


def finitary_values(depth: int = 3):
    """Pairs (type, value) for small finitary types."""
    types = [N, TOP, Or(TOP, TOP), And(N, TOP), Mu(INF, Or(TOP, And(N, X)))]
    return st.sampled_from(types).flatmap(lambda t: st.sampled_from(values_up_to(t, 2)).map(lambda v: (t, v)))


@st.composite
def constraints(draw, max_vars: int = 5) -> Constraint:
    n = draw(st.integers(0, max_vars))
    names = [f"v{i}" for i in range(n)]
    parent = {}
    for i, v in enumerate(names):
        parent[v] = draw(st.sampled_from([INF] + names[:i]))
    return Constraint(parent)


# ---------------------------------------------------------------- cyclic graphs

TREE_BODY = Or(TOP, And(X, X))


def _tree_type(ann: str) -> Nu:
    return Nu(ann, TREE_BODY)


@dataclass
class _Goal:
    nid: str
    chain: list[str]  # outermost first

    @property
    def ann(self) -> str:
        return self.chain[-1] if self.chain else INF


class _Budget(Exception):
    pass


def random_graph(rng: random.Random, max_nodes: int = 10, max_vars: int = 3) -> ProofGraph | None:
    """A well-formed cyclic proof of ``|- nu X. T \\/ (X /\\ X)``, or None.

    Cycles may pass through ``nu_R`` (descending) or through a cut that
    restates the goal (no descent), so both verdicts occur.
    """
    nodes: dict = {}
    ids = iter(range(1000))

    def new() -> str:
        nid = f"g{next(ids)}"
        if len(nodes) >= max_nodes:
            raise _Budget
        nodes[nid] = None
        return nid

    def seq(ch: list[str], f) -> Sequent:
        return Sequent(chain(*reversed(ch)) if ch else TRIVIAL, (), f)

    def close(goal: _Goal, anc: list[_Goal]) -> bool:
        opts = []
        for c in anc:
            if c.chain and not goal.chain:
                continue
            if not c.chain:
                # the companion's inf may be realized by the leaf's annotation or stay inf
                opts.append((c, {} if goal.ann == INF else {INF: goal.ann}))
                if goal.ann != INF:
                    opts.append((c, {}))
                continue
            k, m = len(c.chain), len(goal.chain)
            if k > m:
                continue
            slots = sorted(rng.sample(range(m - 1), k - 1)) if k > 1 else []
            sig = {c.chain[i]: goal.chain[j] for i, j in enumerate(slots)}
            sig[c.chain[-1]] = goal.chain[-1]
            top = slots[0] if slots else m - 1
            if top > 0 and rng.random() < 0.3:
                sig[INF] = goal.chain[rng.randrange(top)]
            opts.append((c, sig))
        if not opts:
            return False
        c, sig = rng.choice(opts)
        if sig.get(INF, INF) == INF and c.ann == INF and goal.ann != INF:
            return False  # the conclusions would not match
        nodes[goal.nid] = Back(seq(goal.chain, _tree_type(goal.ann)), c.nid, tuple(sorted(sig.items())))
        return True

    def grow(goal: _Goal, anc: list[_Goal]) -> None:
        here = anc + [goal]
        moves = ["nu", "stall"] + (["close"] * 2 if anc else [])
        rng.shuffle(moves)
        for mv in moves:
            if mv == "close" and close(goal, anc):
                return
            if mv == "nu" and len(goal.chain) < max_vars:
                b = f"v{len(goal.chain)}"
                ch = goal.chain + [b]
                p = new()
                nodes[goal.nid] = Step(seq(goal.chain, _tree_type(goal.ann)), nu_r(goal.ann, b), (p,))
                cell = Or(TOP, And(_tree_type(b), _tree_type(b)))
                if rng.random() < 0.4:
                    q = new()
                    nodes[p] = Step(seq(ch, cell), or_r(0), (q,))
                    nodes[q] = Step(seq(ch, TOP), ax_top(), ())
                    return
                q = new()
                nodes[p] = Step(seq(ch, cell), or_r(1), (q,))
                l, r = new(), new()
                nodes[q] = Step(seq(ch, And(_tree_type(b), _tree_type(b))), and_r(), (l, r))
                grow(_Goal(l, ch), here)
                grow(_Goal(r, ch), here)
                return
            if mv == "stall":
                m, w = new(), new()
                inner = new()
                s = seq(goal.chain, _tree_type(goal.ann))
                o = s.constraint
                nodes[goal.nid] = Step(s, cut("x"), (m, w))
                nodes[m] = Step(Sequent(o, (), TOP), ax_top(), ())
                nodes[w] = Step(Sequent(o, (("x", TOP),), s.conclusion), weak("x"), (inner,))
                grow(_Goal(inner, goal.chain), here)
                return
        raise _Budget

    try:
        root = new()
        grow(_Goal(root, []), [])
    except (_Budget, ValueError):
        return None
    if any(v is None for v in nodes.values()):
        return None
    return ProofGraph(nodes, root, "random")


# ---------------------------------------------------------------- closed programs


def _num(k: int) -> Built:
    return encode_term(nat(k), N)


def random_program(rng: random.Random, depth: int = 3):
    """A closed proof of ``|- N`` and the number it should compute."""
    c = corpus.core()
    if depth == 0 or rng.random() < 0.25:
        k = rng.randint(0, 3)
        return _num(k), k
    op = rng.choice(["add", "double", "succ", "id", "fold_double", "fold_identity", "idcut"])
    if op == "add":
        (a, x), (b, y) = random_program(rng, depth - 1), random_program(rng, depth - 1)
        return apply_args(c["add"], [a, b]), x + y
    a, x = random_program(rng, depth - 1)
    if op == "double":
        return apply_args(c["double"], [a]), 2 * x
    if op == "succ":
        return apply_args(c["succ"], [a]), x + 1
    if op == "id":
        return apply_args(c["id"], [a]), x
    if op == "fold_double":
        return apply_args(_fold_double(), [a]), 2 * x
    if op == "fold_identity":
        return apply_args(_fold_identity(), [a]), x
    ident = Built(Sequent(TRIVIAL, (("y", N),), N), _id("y"), ())
    return mk_cut([("y", a)], ident), x


def _id(y: str):
    return id_rule(y)


_CACHE: dict = {}


def _fold_double():
    if "fd" not in _CACHE:
        _CACHE["fd"] = corpus.fold_double()
    return _CACHE["fd"]


def _fold_identity():
    if "fi" not in _CACHE:
        _CACHE["fi"] = corpus.fold_identity()
    return _CACHE["fi"]


def random_pair_program(rng: random.Random, depth: int = 2):
    """A closed proof of ``|- N /\\ N`` whose halves both still compute."""
    (a, x), (b, y) = random_program(rng, depth), random_program(rng, depth)
    return Built(Sequent(TRIVIAL, (), And(N, N)), and_r(), (a, b)), (x, y)


def term(u):
    return as_term(u)
