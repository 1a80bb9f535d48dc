"""Bundled example proofs: the shipped proof files plus derived constructions."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .algebra import copy_succ, double_algebra, fold, identity_algebra, unfold_coalg
from .eval import apply_args, compose, encode_nat, encode_term, nat, observer
from .kernel import ProofGraph
from .prooffile import ProofFile, parse_proof_file
from .syntax import TOP, And, N, Or, X, is_finitary
from .rewrite import mk_cut
from .terms import root_view, subterm, to_graph, unfold_head

NAT_FUNCTOR = Or(TOP, X)
STREAM_FUNCTOR = And(N, X)


def corpus_files() -> list[str]:
    return sorted(p.name for p in resources.files(__package__).joinpath("corpus").iterdir() if p.name.endswith(".proof"))


def corpus_text(name: str) -> str:
    return resources.files(__package__).joinpath("corpus").joinpath(name).read_text()


@lru_cache(maxsize=None)
def load(name: str) -> ProofFile:
    return parse_proof_file(corpus_text(name))


def core() -> ProofFile:
    return load("core.proof")


def negative() -> ProofFile:
    return load("negative.proof")


def valid_theorems() -> dict[str, ProofGraph]:
    out = {}
    for f in corpus_files():
        for name, th in load(f).theorems.items():
            if not th.expect_invalid:
                out[name] = th.graph
    return out


def fold_double() -> ProofGraph:
    return fold(NAT_FUNCTOR, double_algebra())


def fold_identity() -> ProofGraph:
    return fold(NAT_FUNCTOR, identity_algebra())


def from_stream() -> ProofGraph:
    """``n |- S``: the stream ``n, n+1, n+2, ...``."""
    return unfold_coalg(STREAM_FUNCTOR, copy_succ())


def from0() -> ProofGraph:
    return to_graph(compose(encode_nat(0), from_stream()), "from0")


def bounce_from0() -> ProofGraph:
    return to_graph(compose(from0(), core()["bounce"]), "bounce_from0")


def derived() -> dict[str, ProofGraph]:
    return {
        "fold_double": fold_double(),
        "fold_identity": fold_identity(),
        "from": from_stream(),
        "from0": from0(),
        "bounce_from0": bounce_from0(),
    }


def all_valid() -> dict[str, ProofGraph]:
    return {**valid_theorems(), **derived()}


def open_instances(g: ProofGraph, depth: int = 4) -> list[ProofGraph]:
    """Subproofs of the unfolding of ``g`` whose root constraint is not trivial."""
    out = []
    seen = set()

    def walk(pos: tuple[int, ...]) -> None:
        if len(pos) > depth:
            return
        t = subterm(root_view(g), pos)
        o = t.sequent.constraint
        if not o.is_trivial():
            key = (str(t.sequent), getattr(t, "node", None))
            if key not in seen:
                seen.add(key)
                out.append(to_graph(t, f"{g.name}@{'.'.join(map(str, pos))}"))
        for i in range(len(unfold_head(t).premises)):
            walk(pos + (i,))

    walk(())
    return out


def closed_finitary() -> dict[str, ProofGraph]:
    """Closed proofs of finitary sentences, each one a program run on data."""
    c = core()
    num = lambda k: encode_term(nat(k), N)  # noqa: E731
    out = {name: g for name, g in valid_theorems().items()
           if not g.conclusion.context and g.conclusion.constraint.is_trivial() and _finitary(g)}
    out["add_2_3"] = to_graph(apply_args(c["add"], [num(2), num(3)]), "add_2_3")
    out["double_4"] = to_graph(apply_args(c["double"], [num(4)]), "double_4")
    out["succ_id_5"] = to_graph(compose(apply_args(c["id"], [num(5)]), c["succ"]), "succ_id_5")
    out["fold_double_3"] = to_graph(apply_args(fold_double(), [num(3)]), "fold_double_3")
    out["add_double"] = to_graph(apply_args(c["add"], [apply_args(c["double"], [num(2)]), num(1)]), "add_double")
    s = bounce_from0()
    out["bounce_head"] = to_graph(mk_cut([("s", root_view(s))], observer(s.conclusion.conclusion, 1)), "bounce_head")
    return out


def _finitary(g: ProofGraph) -> bool:
    return is_finitary(g.conclusion.conclusion)
