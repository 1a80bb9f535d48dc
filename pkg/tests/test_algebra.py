import pytest

from cyclicproofs import corpus
from cyclicproofs.algebra import (
    algebra_law,
    algebra_maps,
    coalgebra_law,
    coalgebra_maps,
    copy_succ,
    double_algebra,
    fold,
    identity_algebra,
    lift_functor,
    nat_algebra,
    succ_term,
    unfold_coalg,
    uniqueness_probe,
    unit_pairing,
)
from cyclicproofs.errors import ShapeError
from cyclicproofs.eval import (
    Inl,
    Inr,
    Pair,
    Unit,
    compose,
    encode_nat,
    encode_term,
    id_proof,
    nat,
    nat_of,
    obs_equiv,
    observe_stream,
    run_function,
    run_values,
)
from cyclicproofs.constraints import TRIVIAL
from cyclicproofs.kernel import Sequent, and_r, check_graph, contr
from cyclicproofs.syntax import INF, TOP, And, Imp, N, Nu, Or, X
from cyclicproofs.terms import Built, as_term, to_graph, unfold_head
from cyclicproofs.validity import check_validity

NAT_F = Or(TOP, X)
STREAM_F = And(N, X)
UNIT_F = And(TOP, X)


def ok(g):
    check_graph(g)
    assert check_validity(g)
    return g


def with_id_cut(g):
    (_, ty), = g.conclusion.context
    return to_graph(compose(id_proof(ty, "p"), g), "idcut")


def test_lift_on_x_is_the_arrow():
    u = corpus.core()["succ"]
    assert obs_equiv(ok(lift_functor(X, u)), u)


def test_lift_without_x_is_identity():
    g = ok(lift_functor(Or(TOP, TOP), corpus.core()["succ"]))
    assert unfold_head(as_term(g)).rule.kind == "Id"


def test_lift_on_product():
    g = ok(lift_functor(And(N, X), corpus.core()["succ"]))
    head = unfold_head(as_term(g))
    assert head.rule.kind == "AndL"
    assert unfold_head(head.premises[0]).rule.kind == "AndR"
    assert run_values(g, [Pair(nat(4), nat(1))]) == Pair(nat(4), nat(2))


def test_lift_through_arrow_antecedent():
    g = ok(lift_functor(Imp(N, X), corpus.core()["succ"]))
    assert g.conclusion.conclusion == Imp(N, N)


def test_lift_rejects_negative_body():
    with pytest.raises(ShapeError):
        lift_functor(Imp(X, TOP), corpus.core()["succ"])


def test_functoriality():
    f = NAT_F
    assert obs_equiv(lift_functor(f, id_proof(N)), id_proof(Or(TOP, N)))
    u, v = corpus.core()["succ"], corpus.core()["double"]
    both = lift_functor(f, to_graph(compose(u, v), "vu"))
    assert obs_equiv(both, compose(lift_functor(f, u), lift_functor(f, v)))


def test_algebra_maps_check():
    inj, out = algebra_maps(NAT_F)
    ok(inj), ok(out)
    assert unfold_head(as_term(inj)).rule.kind == "MuR"
    assert unfold_head(as_term(out)).rule.kind == "MuL"
    # the inverse is a finite tree: the recursion sits in the lifted step
    assert not out.back_edges()


def test_in_after_out_is_identity():
    inj, out = algebra_maps(NAT_F)
    assert obs_equiv(compose(out, inj), id_proof(N), depth=3)
    assert obs_equiv(compose(inj, out), id_proof(Or(TOP, N)), depth=3)


def test_fold_identity_and_double():
    fi, fd = ok(fold(NAT_F, identity_algebra())), ok(fold(NAT_F, double_algebra()))
    assert run_function(fi, [3]) == 3
    for n in range(9):
        assert run_function(fd, [n]) == 2 * n


def test_fold_computation_rule():
    u = double_algebra()
    f = fold(NAT_F, u)
    for n in range(5):
        assert run_values(f, [nat(n + 1)]) == run_values(u, [Inr(nat(2 * n))])
    assert run_values(f, [nat(0)]) == run_values(u, [Inl(Unit())])


def test_algebra_law():
    u = double_algebra()
    assert algebra_law(NAT_F, u, fold(NAT_F, u))
    assert not algebra_law(NAT_F, u, corpus.core()["id"])


def test_uniqueness_probe():
    u = double_algebra()
    f = fold(NAT_F, u)
    assert uniqueness_probe(NAT_F, u, f)
    assert uniqueness_probe(NAT_F, u, with_id_cut(f))
    assert uniqueness_probe(NAT_F, u, corpus.core()["double"])


def test_uniqueness_probe_rejects_perturbed_candidate():
    u = double_algebra()
    # 2n + 1: the zero branch is off by one
    odd = nat_algebra(encode_term(nat(1), N),
                      lambda n: succ_term(succ_term(as_term(id_proof(N, n)))))
    bad = fold(NAT_F, odd)
    assert [run_function(bad, [n]) for n in range(3)] == [1, 3, 5]
    assert not algebra_law(NAT_F, u, bad)
    assert not uniqueness_probe(NAT_F, u, bad)


def test_coalgebra_maps_check():
    out, inj = coalgebra_maps(STREAM_F)
    ok(out), ok(inj)


def test_coalgebra_isos():
    out, inj = coalgebra_maps(STREAM_F)
    s = Nu(INF, STREAM_F)
    assert obs_equiv(compose(inj, out), id_proof(And(N, s)), depth=2)
    assert obs_equiv(compose(out, inj), id_proof(s), depth=2)


def test_unfold_from():
    g = ok(unfold_coalg(STREAM_F, copy_succ()))
    s0 = compose(encode_nat(0), g)
    assert [nat_of(observe_stream(s0, i)) for i in range(3)] == [0, 1, 2]


def test_unfold_unit_pairing_is_unit_stream():
    g = ok(unfold_coalg(UNIT_F, unit_pairing()))
    closed = compose(encode_term(Unit(), TOP), g)
    assert obs_equiv(closed, corpus.core()["unit_stream"], depth=3)


def test_coalgebra_law():
    u = copy_succ()
    assert coalgebra_law(STREAM_F, u, unfold_coalg(STREAM_F, u), depth=2)
    assert coalgebra_law(UNIT_F, unit_pairing(), unfold_coalg(UNIT_F, unit_pairing()), depth=2)


def test_coalgebra_law_fails_for_wrong_candidate():
    u = copy_succ()
    wrong = unfold_coalg(STREAM_F, _copy_double())
    assert not coalgebra_law(STREAM_F, u, wrong, depth=2)


def _copy_double():
    pair = Built(Sequent(TRIVIAL, (("y0", N), ("y1", N)), And(N, N)), and_r(),
                 (as_term(id_proof(N, "y0")), succ_term(succ_term(as_term(id_proof(N, "y1"))))))
    return to_graph(Built(Sequent(TRIVIAL, (("y", N),), And(N, N)), contr("y", "y0", "y1"), (pair,)), "copy_double")
