"""Functor lifting, initial algebras, final coalgebras, fold and unfold,
each emitted as a checkable proof graph."""

from __future__ import annotations

from typing import Callable, Sequence

from .constraints import TRIVIAL, Constraint, chain, extend, union
from .errors import ShapeError
from .eval import compose, encode_term, nat, obs_equiv
from .kernel import (
    ProofGraph,
    Sequent,
    and_l,
    and_r,
    ax_top,
    contr,
    cut as cut_rule,
    id_rule,
    imp_l,
    imp_r,
    mu_l,
    mu_r,
    nu_l,
    nu_r,
    or_l,
    or_r,
    weak,
)
from .syntax import INF, TOP, And, FixVar, Formula, Imp, Mu, N, Nu, Or, has_free_x, show, strictly_positive, subst_x
from .terms import Built, Link, Term, View, to_graph

# A proof of ``name : B |- C`` at constraint ``o``, built on demand.
Arrow = Callable[[str, Constraint], Term]


def embed(u, name: str, o: Constraint = TRIVIAL) -> Term:
    """The one-hypothesis proof ``u`` with its hypothesis renamed and its
    constraint widened to ``o``."""
    g = u if isinstance(u, ProofGraph) else to_graph(u)
    s = g.conclusion
    if len(s.context) != 1:
        raise ShapeError(f"expected one hypothesis, got {len(s.context)}")
    if not s.constraint.is_trivial():
        raise ShapeError("arrows must have a trivial constraint")
    (old, _), = s.context
    return View(g, g.root, {INF: INF}, {old: name}, union(s.constraint, o))


def arrow(u) -> Arrow:
    return lambda name, o: embed(u, name, o)


def _check_body(a: Formula) -> None:
    if not strictly_positive(a):
        raise ShapeError(f"functor body not strictly positive: {show(a)}")


def lift(a: Formula, h: Arrow, b: Formula, c: Formula, z: str, o: Constraint) -> Term:
    """``z : A[B/X] |- A[C/X]`` from ``h : B |- C``."""
    src, dst = subst_x(a, b), subst_x(a, c)
    if not has_free_x(a):
        return Built(Sequent(o, ((z, a),), a), id_rule(z), ())
    if isinstance(a, FixVar):
        return h(z, o)
    if isinstance(a, And):
        z0, z1 = z + "0", z + "1"
        pair = Built(Sequent(o, ((z0, subst_x(a.left, b)), (z1, subst_x(a.right, b))), dst), and_r(),
                     (lift(a.left, h, b, c, z0, o), lift(a.right, h, b, c, z1, o)))
        return Built(Sequent(o, ((z, src),), dst), and_l(z, z0, z1), (pair,))
    if isinstance(a, Or):
        z0, z1 = z + "0", z + "1"
        left = Built(Sequent(o, ((z0, subst_x(a.left, b)),), dst), or_r(0), (lift(a.left, h, b, c, z0, o),))
        right = Built(Sequent(o, ((z1, subst_x(a.right, b)),), dst), or_r(1), (lift(a.right, h, b, c, z1, o),))
        return Built(Sequent(o, ((z, src),), dst), or_l(z, z0, z1), (left, right))
    if isinstance(a, Imp) and not has_free_x(a.left):
        v, y = z + "v", z + "r"
        arg = Built(Sequent(o, ((v, a.left),), a.left), id_rule(v), ())
        body = Built(Sequent(o, ((z, src), (v, a.left)), dst.right), imp_l(z, y),
                     (arg, lift(a.right, h, b, c, y, o)))
        return Built(Sequent(o, ((z, src),), dst), imp_r(v), (body,))
    raise ShapeError(f"cannot lift through {show(a)}")


def lift_functor(a: Formula, u) -> ProofGraph:
    """``A[B/X] |- A[C/X]`` from a proof ``u`` of ``B |- C``."""
    _check_body(a)
    g = u if isinstance(u, ProofGraph) else to_graph(u)
    (_, b), = g.conclusion.context
    c = g.conclusion.conclusion
    return to_graph(lift(a, arrow(g), b, c, "x", TRIVIAL), "lift")


# ---------------------------------------------------------------- initial algebra


def algebra_maps(a: Formula) -> tuple[ProofGraph, ProofGraph]:
    """``(in, out)`` for ``mu X. A``: ``A[mu/X] |- mu`` and its inverse."""
    _check_body(a)
    m = Mu(INF, a)
    am = subst_x(a, m)
    inj = Built(Sequent(TRIVIAL, (("x", am),), m), mu_r(INF, INF),
                (Built(Sequent(TRIVIAL, (("x", am),), am), id_rule("x"), ()),))

    def h(name: str, o: Constraint) -> Term:
        ob = extend(o, "a", "b")
        zb = name + "u"
        amb = subst_x(a, Mu("b", a))
        inner = Built(Sequent(ob, ((zb, amb),), m), mu_r(INF, "b"),
                      (Built(Sequent(ob, ((zb, amb),), amb), id_rule(zb), ()),))
        return Built(Sequent(o, ((name, Mu("a", a)),), m), mu_l("a", "b", name, zb), (inner,))

    o = chain("a")
    body = lift(a, h, Mu("a", a), m, "z", o)
    out = Built(Sequent(TRIVIAL, (("x", m),), am), mu_l(INF, "a", "x", "z"), (body,))
    return to_graph(inj, "in"), to_graph(out, "out")


def fold(a: Formula, u) -> ProofGraph:
    """The algebra morphism ``mu X. A |- B`` out of ``u : A[B/X] |- B``."""
    _check_body(a)
    g = u if isinstance(u, ProofGraph) else to_graph(u)
    b = g.conclusion.conclusion
    m, ma = Mu(INF, a), Mu("a", a)
    o = chain("a")

    def h(name: str, oh: Constraint) -> Term:
        ob = extend(oh, "a", "b")
        zb = name + "u"
        leaf = Link(Sequent(ob, ((zb, subst_x(a, Mu("b", a))),), b), "fold", (("a", "b"),))
        return Built(Sequent(oh, ((name, ma),), b), mu_l("a", "b", name, zb), (leaf,))

    lifted = lift(a, h, ma, b, "z", o)
    step = Built(Sequent(o, (("z", subst_x(a, ma)),), b), cut_rule("w"), (lifted, embed(g, "w", o)), label="fold")
    root = Built(Sequent(TRIVIAL, (("x", m),), b), mu_l(INF, "a", "x", "z"), (step,))
    return to_graph(root, "fold")


# ---------------------------------------------------------------- final coalgebra


def coalgebra_maps(a: Formula) -> tuple[ProofGraph, ProofGraph]:
    """``(out, in)`` for ``nu X. A``: ``nu |- A[nu/X]`` and its inverse."""
    _check_body(a)
    n = Nu(INF, a)
    an = subst_x(a, n)
    out = Built(Sequent(TRIVIAL, (("x", n),), an), nu_l(INF, INF, "x", "z"),
                (Built(Sequent(TRIVIAL, (("z", an),), an), id_rule("z"), ()),))

    def h(name: str, o: Constraint) -> Term:
        ob = extend(o, "a", "b")
        zb = name + "u"
        anb = subst_x(a, Nu("b", a))
        inner = Built(Sequent(ob, ((name, n),), anb), nu_l(INF, "b", name, zb),
                      (Built(Sequent(ob, ((zb, anb),), anb), id_rule(zb), ()),))
        return Built(Sequent(o, ((name, n),), Nu("a", a)), nu_r("a", "b"), (inner,))

    o = chain("a")
    body = lift(a, h, n, Nu("a", a), "x", o)
    inj = Built(Sequent(TRIVIAL, (("x", an),), n), nu_r(INF, "a"), (body,))
    return to_graph(out, "out"), to_graph(inj, "in")


def unfold_coalg(a: Formula, u) -> ProofGraph:
    """The coalgebra morphism ``B |- nu X. A`` out of ``u : B |- A[B/X]``."""
    _check_body(a)
    g = u if isinstance(u, ProofGraph) else to_graph(u)
    (_, b), = g.conclusion.context
    n, na = Nu(INF, a), Nu("a", a)
    o = chain("a")

    def h(name: str, oh: Constraint) -> Term:
        ob = extend(oh, "a", "b")
        leaf = Link(Sequent(ob, ((name, b),), subst_x(a, Nu("b", a))), "unfold", (("a", "b"),))
        return Built(Sequent(oh, ((name, b),), na), nu_r("a", "b"), (leaf,))

    lifted = lift(a, h, b, na, "w", o)
    step = Built(Sequent(o, (("x", b),), subst_x(a, na)), cut_rule("w"), (embed(g, "x", o), lifted), label="unfold")
    root = Built(Sequent(TRIVIAL, (("x", b),), n), nu_r(INF, "a"), (step,))
    return to_graph(root, "unfold")


# ---------------------------------------------------------------- laws


def algebra_law(a: Formula, u, candidate, depth: int = 3, fuel: int = 1_000_000) -> bool:
    """``u . A(candidate) == candidate . in`` on probes of ``A[mu/X]``."""
    inj, _ = algebra_maps(a)
    lhs = compose(lift_functor(a, candidate), u)
    rhs = compose(inj, candidate)
    return obs_equiv(lhs, rhs, depth, fuel)


def coalgebra_law(a: Formula, u, candidate, depth: int = 2, fuel: int = 1_000_000) -> bool:
    """``out . candidate == A(candidate) . u`` on probes of the source."""
    out, _ = coalgebra_maps(a)
    lhs = compose(candidate, out)
    rhs = compose(u, lift_functor(a, candidate))
    return obs_equiv(lhs, rhs, depth, fuel)


def uniqueness_probe(a: Formula, u, candidate, samples: Sequence | None = None, depth: int = 3,
                     fuel: int = 1_000_000) -> bool:
    """Whether a law-abiding ``candidate`` agrees with ``fold(a, u)`` on the samples."""
    if not algebra_law(a, u, candidate, depth, fuel):
        return False
    f = fold(a, u)
    if samples is None:
        return obs_equiv(candidate, f, depth, fuel)
    return all(obs_equiv(compose(s, candidate), compose(s, f), depth, fuel) for s in samples)


# ---------------------------------------------------------------- small algebras


def nat_algebra(zero: Term | None, step: Callable[[str], Term] | None = None, name: str = "w") -> ProofGraph:
    """``[inl -> zero, inr n -> step(n)]`` as a proof of ``T \\/ N |- N``."""
    w0, w1 = name + "0", name + "1"
    z = Built(Sequent(TRIVIAL, ((w0, TOP),), N), weak(w0), (zero,))
    s = step(w1)
    top = Built(Sequent(TRIVIAL, ((name, Or(TOP, N)),), N), or_l(name, w0, w1), (z, s))
    return to_graph(top, "algebra")


def succ_term(t: Term) -> Built:
    """``S t`` for a term concluding ``N``."""
    s = t.sequent
    return Built(s, mu_r(INF, INF), (Built(Sequent(s.constraint, s.context, Or(TOP, N)), or_r(1), (t,)),))


def zero_term() -> Built:
    return encode_term(nat(0), N)


def double_algebra() -> ProofGraph:
    return nat_algebra(zero_term(), lambda n: succ_term(succ_term(Built(Sequent(TRIVIAL, ((n, N),), N), id_rule(n), ()))))


def identity_algebra() -> ProofGraph:
    return nat_algebra(zero_term(), lambda n: succ_term(Built(Sequent(TRIVIAL, ((n, N),), N), id_rule(n), ())))


def copy_succ() -> ProofGraph:
    """``y : N |- N /\\ N`` sending ``n`` to ``(n, n + 1)``."""
    pair = Built(Sequent(TRIVIAL, (("y0", N), ("y1", N)), And(N, N)), and_r(),
                 (Built(Sequent(TRIVIAL, (("y0", N),), N), id_rule("y0"), ()),
                  succ_term(Built(Sequent(TRIVIAL, (("y1", N),), N), id_rule("y1"), ()))))
    return to_graph(Built(Sequent(TRIVIAL, (("y", N),), And(N, N)), contr("y", "y0", "y1"), (pair,)), "copy_succ")


def unit_pairing() -> ProofGraph:
    """``y : T |- T /\\ T``."""
    t = Built(Sequent(TRIVIAL, (("y", TOP),), TOP), id_rule("y"), ())
    ax = Built(Sequent(TRIVIAL, (), TOP), ax_top(), ())
    return to_graph(Built(Sequent(TRIVIAL, (("y", TOP),), And(TOP, TOP)), and_r(), (t, ax)), "unit_pairing")
