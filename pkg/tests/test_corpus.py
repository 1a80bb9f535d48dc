import pytest

from cyclicproofs import corpus
from cyclicproofs.kernel import check_graph
from cyclicproofs.rewrite import find_redexes, reduce
from cyclicproofs.syntax import classify, is_finitary
from cyclicproofs.validity import Invalid, check_validity


def test_files_bundled():
    assert corpus.corpus_files() == ["core.proof", "negative.proof"]


@pytest.mark.parametrize("name", sorted(corpus.all_valid()))
def test_valid_examples(name):
    g = corpus.all_valid()[name]
    check_graph(g)
    assert check_validity(g)


def test_negative_examples_flagged_and_invalid():
    for th in corpus.negative().theorems.values():
        assert th.expect_invalid
        check_graph(th.graph)
        assert isinstance(check_validity(th.graph), Invalid)


@pytest.mark.parametrize("name", sorted(corpus.closed_finitary()))
def test_closed_finitary_programs_normalize(name):
    g = corpus.closed_finitary()[name]
    assert is_finitary(g.conclusion.conclusion)
    r = reduce(g, fuel=10**6, trace=False)
    assert r.normal
    assert find_redexes(r.proof) == []


def test_finitary_corpus_formulas_are_pure():
    for g in corpus.closed_finitary().values():
        c = classify(g.conclusion.conclusion)
        assert c.is_finitary and c.is_pure
