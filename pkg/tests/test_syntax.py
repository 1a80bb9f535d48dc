import pytest
from hypothesis import given

from cyclicproofs.errors import ParseError, PositivityError, ScopeError, ShapeError
from cyclicproofs.syntax import (
    INF,
    N,
    TOP,
    X,
    And,
    Imp,
    Mu,
    Nu,
    Or,
    classify,
    is_finitary,
    parse_formula,
    parse_open_formula,
    show,
    strictly_positive,
    unfold_fixpoint,
)

from generators import formulas

S = Nu(INF, And(N, X))


def test_parse_nat():
    assert parse_formula("mu[inf]X. T \\/ X") == Mu(INF, Or(TOP, X))


def test_parse_top():
    assert parse_formula("T") == TOP


def test_negative_occurrence_rejected():
    with pytest.raises(PositivityError):
        parse_formula("mu[inf]X. X -> T")


def test_free_fixvar_rejected():
    with pytest.raises(ScopeError):
        parse_formula("X /\\ T")


@pytest.mark.parametrize("text", ["", "T \\/", "mu X. T", "(T", "mu[inf]X T", "T T"])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_precedence_and_associativity():
    assert parse_formula("T -> T -> T") == Imp(TOP, Imp(TOP, TOP))
    assert parse_formula("T \\/ T /\\ T") == Or(TOP, And(TOP, TOP))
    # binder scope extends to the right
    assert parse_formula("nu[a]X. T /\\ X") == Nu("a", And(TOP, X))


def test_open_formula():
    assert parse_open_formula("T \\/ X") == Or(TOP, X)


def test_strictly_positive():
    assert strictly_positive(Or(TOP, X))
    assert not strictly_positive(Imp(X, TOP))
    assert strictly_positive(Imp(N, X))


def test_classify():
    assert classify(N) == (True, True)
    assert classify(S) == (True, False)
    assert classify(Imp(N, N)) == (True, False)
    assert not classify(Mu("a", Or(TOP, X))).is_pure


def test_unfold_fixpoint():
    assert unfold_fixpoint(N, INF) == Or(TOP, N)
    assert unfold_fixpoint(S, "a") == And(N, Nu("a", And(N, X)))
    assert unfold_fixpoint(Mu("a", X), "b") == Mu("b", X)
    with pytest.raises(ShapeError):
        unfold_fixpoint(TOP, INF)


@given(formulas())
def test_show_parse_roundtrip(f):
    assert parse_formula(show(f)) == f


@given(formulas())
def test_unfolding_keeps_positivity(f):
    if isinstance(f, (Mu, Nu)):
        g = unfold_fixpoint(f, "c")
        assert parse_formula(show(g)) == g


@given(formulas())
def test_finitary_formulas_have_no_nu_or_arrow(f):
    if is_finitary(f):
        assert "nu" not in show(f) and "->" not in show(f)
