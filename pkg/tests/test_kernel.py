import pytest

from cyclicproofs import corpus
from cyclicproofs.constraints import TRIVIAL, chain
from cyclicproofs.errors import KernelError
from cyclicproofs.kernel import (
    Back,
    ProofGraph,
    Sequent,
    Step,
    and_r,
    ax_top,
    check_graph,
    check_rule_instance,
    free_ordinal_vars,
    id_rule,
    is_well_formed,
    mu_r,
    nu_r,
    unfold_prefix,
)
from cyclicproofs.prooffile import parse_proof_file
from cyclicproofs.syntax import INF, TOP, And, N, Nu, X

U = Nu(INF, And(TOP, X))
S = Nu(INF, And(N, X))


def seq(f, ctx=(), o=TRIVIAL):
    return Sequent(o, tuple(ctx), f)


def test_nu_r_instance():
    a = chain("a")
    check_rule_instance(seq(U), nu_r(INF, "a"), [seq(And(TOP, Nu("a", And(TOP, X))), o=a)])


def test_mu_r_unknown_inner():
    with pytest.raises(KernelError) as e:
        check_rule_instance(seq(N), mu_r(INF, "b"), [seq(N)])
    assert e.value.reason == "UnknownTerm"


def test_id_needs_exactly_one_hypothesis():
    with pytest.raises(KernelError) as e:
        check_rule_instance(seq(TOP, [("x", TOP), ("y", TOP)]), id_rule("x"), [])
    assert e.value.reason == "ContextShape"


def test_ax_top_requires_empty_context():
    check_rule_instance(seq(TOP), ax_top(), [])
    with pytest.raises(KernelError):
        check_rule_instance(seq(TOP, [("x", TOP)]), ax_top(), [])


def test_and_r_splits_context():
    ctx = [("x", TOP), ("y", N)]
    check_rule_instance(seq(And(TOP, N), ctx), and_r(), [seq(TOP, ctx[:1]), seq(N, ctx[1:])])
    with pytest.raises(KernelError):
        check_rule_instance(seq(And(TOP, N), ctx), and_r(), [seq(TOP, ctx[:1]), seq(N, ctx[:1])])


def test_nu_r_eigen_must_be_fresh():
    a = chain("a")
    with pytest.raises(KernelError):
        check_rule_instance(seq(U, o=a), nu_r(INF, "a"), [seq(And(TOP, Nu("a", And(TOP, X))), o=a)])


def test_corpus_graphs_check():
    for g in corpus.all_valid().values():
        check_graph(g)


def test_unit_stream_back_edge():
    g = corpus.core()["unit_stream"]
    leaf = [n for n in g.nodes.values() if isinstance(n, Back)][0]
    assert leaf.sigma_map()[INF] == "a"
    assert leaf.sequent.conclusion == Nu("a", And(TOP, X))


def _unit_loop(sigma, companion="r", o=None):
    o = o or chain("a")
    return ProofGraph({
        "r": Step(seq(U), nu_r(INF, "a"), ("n1",)),
        "n1": Step(seq(And(TOP, Nu("a", And(TOP, X))), o=o), and_r(), ("n2", "n3")),
        "n2": Step(seq(TOP, o=o), ax_top(), ()),
        "n3": Back(seq(Nu("a", And(TOP, X)), o=o), companion, sigma),
    }, "r")


def test_hand_built_unit_stream():
    check_graph(_unit_loop(((INF, "a"),)))


def test_back_edge_must_target_ancestor():
    with pytest.raises(KernelError) as e:
        check_graph(_unit_loop(((INF, "a"),), companion="n2"))
    assert e.value.reason == "CompanionNotAncestor"
    assert e.value.node == "n3"


def test_renaming_must_be_monotone():
    # companion has b < a, leaf sends them to incomparable siblings
    text = """
define U[o] := nu[o]X. T /\\ X
theorem t : b < a < inf ; |- U[b]
  node r : b < a < inf ; |- U[b] = nuR(b, c) [n1]
  node n1 : c < b < a < inf ; |- T /\\ U[c] = andR [n2, n3]
  node n2 : c < b < a < inf ; |- T = axT
  node n3 : c < b < a < inf ; |- U[c] = back r { a := c, b := c }
"""
    g = parse_proof_file(text)["t"]
    with pytest.raises(KernelError) as e:
        check_graph(g)
    assert e.value.reason == "RenamingNotMonotone"
    assert not is_well_formed(g)


def test_free_ordinal_vars():
    assert free_ordinal_vars(seq(Nu("a", And(TOP, X)), o=chain("a"))) == {"a"}
    assert free_ordinal_vars(seq(TOP)) == set()
    o = chain("b", "a")
    assert free_ordinal_vars(seq(And(N, Nu("b", And(N, X))), [("s", S)], o)) == {"b"}


def test_unfold_prefix_depth_zero():
    d = unfold_prefix(corpus.core()["unit_stream"], 0)
    assert d.rule is None and d.sequent == seq(U)


def test_unfold_prefix_unit_stream():
    d = unfold_prefix(corpus.core()["unit_stream"], 4)
    # r -> n1 -> n3 (copy of r) -> its and_R
    copy = d.premises[0].premises[1]
    assert copy.rule.kind == "NuR"
    a = d.rule.eigen
    b = copy.rule.eigen
    assert a != b
    assert copy.premises[0].sequent.constraint == chain(b, a)


@pytest.mark.parametrize("name", sorted(corpus.all_valid()))
def test_unfold_prefix_rules_check_and_eigens_fresh(name):
    g = corpus.all_valid()[name]
    d = unfold_prefix(g, 6)
    for node in d.nodes():
        if node.rule is not None:
            check_rule_instance(node.sequent, node.rule, [p.sequent for p in node.premises])
    for branch in d.branches():
        eigens = [n.rule.eigen for n in branch if n.rule is not None and n.rule.eigen]
        assert len(eigens) == len(set(eigens))
        for up, down in zip(branch, branch[1:]):
            assert up.sequent.constraint.vars <= down.sequent.constraint.vars
