import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicproofs import corpus
from cyclicproofs.errors import MismatchedInterface
from cyclicproofs.kernel import check_graph
from cyclicproofs.validity import (
    DescentGraph,
    Invalid,
    Valid,
    brute_force_validity,
    check_validity,
    compose,
    descent_graph,
    identity,
)

from generators import random_graph


def dg(src, dst, arcs):
    return DescentGraph(frozenset(src), frozenset(dst), frozenset(arcs))


def test_compose_identity():
    g = dg("ab", "ab", [("a", "b", True), ("b", "b", False)])
    assert compose(identity("ab"), g) == g
    assert compose(g, identity("ab")) == g


def test_strict_loops_compose_strict():
    s = dg("a", "a", [("a", "a", True)])
    assert compose(s, s).strict_self_arc()


def test_weak_then_strict_is_strict():
    w = dg("a", "a", [("a", "a", False)])
    s = dg("a", "a", [("a", "a", True)])
    assert compose(w, s).arc("a", "a") is True
    assert compose(s, w).arc("a", "a") is True


def test_compose_interface_mismatch():
    with pytest.raises(MismatchedInterface):
        compose(identity("a"), identity("b"))


def test_tree_edge_introducing_eigen():
    add = corpus.core()["add"]
    # r introduces a under inf; the strict arc goes from inf to a
    g = descent_graph(add, ("r", "c"))
    assert g.arc("inf", "a") is True
    assert g.arc("inf", "inf") is False


def test_identity_constraint_edge_is_weak():
    loop = corpus.negative()["loop"]
    assert descent_graph(loop, ("r", "i")) == identity({"inf"})
    add = corpus.core()["add"]
    g = descent_graph(add, ("b0", "b1"))
    # between variables only weak self-arcs; inf sits above every variable
    assert {(s, d, k) for s, d, k in g.arcs if s != "inf"} == {("a", "a", False)}


def test_bounce_back_edge():
    b = corpus.core()["bounce"]
    g = descent_graph(b, ("l4", "r1"))
    assert g.arc("b", "a") is False
    assert g.arc("a", "a") is True


def test_unit_stream_and_bounce_valid():
    assert isinstance(check_validity(corpus.core()["unit_stream"]), Valid)
    assert isinstance(check_validity(corpus.core()["bounce"]), Valid)


def test_cut_loop_invalid_with_witness():
    th = corpus.negative().theorems["loop"]
    check_graph(th.graph)
    v = check_validity(th.graph)
    assert isinstance(v, Invalid)
    assert v.witness[0] == v.witness[-1] == "r"
    assert "m" in v.witness
    assert not v.graph.strict_self_arc()


@pytest.mark.parametrize("name", sorted(corpus.all_valid()))
def test_corpus_agrees_with_oracle(name):
    g = corpus.all_valid()[name]
    assert bool(check_validity(g)) is True
    assert brute_force_validity(g)


def _graphs(seed, n):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        g = random_graph(rng)
        if g is not None and g.back_edges():
            out.append(g)
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_graphs_agree_with_oracle(seed):
    (g,) = _graphs(seed, 1)
    check_graph(g)
    assert bool(check_validity(g)) == brute_force_validity(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_invalid_witness_never_descends(seed):
    (g,) = _graphs(seed, 1)
    v = check_validity(g)
    if isinstance(v, Invalid):
        power = v.graph
        for _ in range(12):
            assert not power.strict_self_arc()
            power = compose(power, v.graph)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_validity_is_deterministic(seed):
    (g,) = _graphs(seed, 1)
    assert check_validity(g) == check_validity(g)
