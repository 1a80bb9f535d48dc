import random

import pytest

from cyclicproofs import corpus
from cyclicproofs.errors import CyclicProofError, ParseError
from cyclicproofs.kernel import check_graph
from cyclicproofs.prooffile import format_proof_file, format_theorem, parse_proof_file

from generators import random_graph


def same_graph(g, h):
    """Equality of graphs, reading every back-edge renaming with its inf default."""
    if g.root != h.root or g.nodes.keys() != h.nodes.keys():
        return False
    for k, n in g.nodes.items():
        m = h.nodes[k]
        if hasattr(n, "sigma"):
            if not hasattr(m, "sigma") or (n.sequent, n.companion, n.sigma_map()) != (m.sequent, m.companion, m.sigma_map()):
                return False
        elif n != m:
            return False
    return True


@pytest.mark.parametrize("name", sorted(corpus.all_valid()))
def test_format_parse_roundtrip(name):
    g = corpus.all_valid()[name]
    again = parse_proof_file(format_theorem(name, g))[name]
    assert same_graph(again, g)


def test_random_graphs_roundtrip():
    rng = random.Random(7)
    done = 0
    while done < 30:
        g = random_graph(rng)
        if g is None:
            continue
        again = parse_proof_file(format_proof_file({"g": g}))["g"]
        assert same_graph(again, g)
        done += 1


def test_expect_invalid_flag():
    th = corpus.negative().theorems["loop"]
    assert th.expect_invalid
    assert "expect invalid" in format_theorem("loop", th.graph, expect_invalid=True)


def test_short_back_edge_form():
    text = """
define U[o] := nu[o]X. T /\\ X
theorem u : |- U[inf]
  node r : |- U[inf] = nuR(inf, a) [n1]
  node n1 : a < inf ; |- T /\\ U[a] = andR [n2, n3]
  node n2 : a < inf ; |- T = axT
  node n3 = back r { inf := a }
"""
    g = parse_proof_file(text)["u"]
    check_graph(g)
    assert same_graph(g, corpus.core()["unit_stream"])


@pytest.mark.parametrize("text", [
    "theorem t : |- T\n  node r : |- T = frobnicate\n",
    "theorem t : |- T\n  node r : |- T = axT [missing]\n",
    "theorem t : |- T\n  node r |- T axT\n",
    "node r : |- T = axT\n",
    "theorem t : |- T /\\\n  node r : |- T = axT\n",
])
def test_malformed_files(text):
    with pytest.raises(CyclicProofError):
        parse_proof_file(text)


def test_unknown_abbreviation():
    with pytest.raises(ParseError):
        parse_proof_file("theorem t : |- Q[inf]\n  node r : |- Q[inf] = axT\n")
