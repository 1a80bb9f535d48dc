"""Command-line interface.

Exit codes: 0 success, 1 an invalid proof (or a failed expectation), 2 a
parse or kernel error.  ``PATH`` may be a proof file or the word ``corpus``
for the bundled examples, which also exposes the derived proofs.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import corpus
from .algebra import (
    algebra_maps,
    coalgebra_maps,
    copy_succ,
    double_algebra,
    fold,
    identity_algebra,
    lift_functor,
    unfold_coalg,
    unit_pairing,
)
from .errors import CyclicProofError, KernelError, OutOfFuel, ParseError
from .eval import Unit, apply_args, encode_term, nat, obs_equiv, observe_stream, show_value, value_of
from .kernel import ProofGraph, check_graph
from .prooffile import ProofFile, format_theorem, load_proof_file
from .rewrite import reduce
from .syntax import parse_open_formula
from .validity import Invalid, check_validity

ALGEBRAS = {
    "double-algebra": double_algebra,
    "identity-algebra": identity_algebra,
    "copy-succ": copy_succ,
    "unit-pairing": unit_pairing,
}


class Out:
    def __init__(self, structured: bool):
        self.structured = structured

    def emit(self, text: str, **record) -> None:
        if self.structured:
            click.echo(json.dumps(record, sort_keys=True))
        else:
            click.echo(text)


def _load(path: str) -> ProofFile:
    if path == "corpus":
        pf = ProofFile()
        for f in corpus.corpus_files():
            part = corpus.load(f)
            pf.abbrevs.update(part.abbrevs)
            pf.theorems.update(part.theorems)
        return pf
    return load_proof_file(Path(path))


def _theorem(path: str, name: str) -> ProofGraph:
    if path == "corpus" and name in corpus.derived():
        return corpus.derived()[name]
    pf = _load(path)
    if name not in pf.theorems:
        raise click.UsageError(f"no theorem {name!r} in {path}")
    return pf[name]


def _fail(out: Out, e: CyclicProofError) -> None:
    node = getattr(e, "node", None)
    reason = getattr(e, "reason", type(e).__name__)
    out.emit(f"error: {e}", kind="error", reason=reason, node=node, message=str(e))
    sys.exit(2)


@click.group()
@click.option("--emit", type=click.Choice(["text", "structured"]), default="text", help="Output format.")
@click.pass_context
def main(ctx: click.Context, emit: str) -> None:
    """Check, run and derive cyclic proofs."""
    ctx.obj = Out(emit == "structured")


@main.command()
@click.argument("path")
@click.pass_obj
def check(out: Out, path: str) -> None:
    """Check every theorem of PATH locally and for infinite descent."""
    try:
        pf = _load(path)
    except (ParseError, KernelError) as e:
        _fail(out, e)
    status = 0
    for name, th in pf.theorems.items():
        try:
            check_graph(th.graph)
        except KernelError as e:
            out.emit(f"{name}: error at node {e.node}: {e.reason} {e.detail}".rstrip(), kind="check", theorem=name,
                     result="error", node=e.node, reason=e.reason, detail=e.detail)
            status = 2
            continue
        v = check_validity(th.graph)
        if isinstance(v, Invalid):
            note = " (expected)" if th.expect_invalid else ""
            out.emit(f"{name}: {v}{note}", kind="check", theorem=name, result="invalid",
                     witness=list(v.witness), graph=str(v.graph), expected=th.expect_invalid)
            status = max(status, 1)
        else:
            if th.expect_invalid:
                status = max(status, 1)
            out.emit(f"{name}: valid" + (" (expected invalid)" if th.expect_invalid else ""),
                     kind="check", theorem=name, result="valid", expected=not th.expect_invalid)
    sys.exit(status)


def _parse_arg(text: str):
    if text == "unit":
        return Unit()
    try:
        k = int(text)
    except ValueError:
        raise click.BadParameter(f"argument {text!r} is neither a natural number nor 'unit'")
    if k < 0:
        raise click.BadParameter("naturals are non-negative")
    return nat(k)


@main.command()
@click.argument("path")
@click.argument("theorem")
@click.argument("args", nargs=-1)
@click.option("--fuel", default=1_000_000, show_default=True, help="Maximum rewrite steps.")
@click.option("--trace", is_flag=True, help="Print the rewrite trace.")
@click.pass_obj
def run(out: Out, path: str, theorem: str, args: tuple[str, ...], fuel: int, trace: bool) -> None:
    """Apply THEOREM to ARGS and print the normal form as a value."""
    try:
        g = _theorem(path, theorem)
        check_graph(g)
        ctx = g.conclusion.context
        vals = [_parse_arg(a) for a in args]
        if len(vals) != len(ctx):
            raise click.UsageError(f"{theorem} takes {len(ctx)} arguments, got {len(vals)}")
        term = apply_args(g, [encode_term(v, f) for v, (_, f) in zip(vals, ctx)])
        r = reduce(term, fuel, trace=trace)
    except CyclicProofError as e:
        _fail(out, e)
    if trace:
        for i, step in enumerate(r.trace):
            pos = ".".join(map(str, step.position)) or "root"
            out.emit(f"step {i}: {step.rule} at {pos}", kind="step", index=i, rule=str(step.rule),
                     position=list(step.position))
    if not r.normal:
        out.emit("OUT_OF_FUEL", kind="result", theorem=theorem, result="out_of_fuel", steps=r.steps)
        return
    try:
        v = value_of(r.proof)
    except CyclicProofError as e:
        _fail(out, e)
    out.emit(show_value(v), kind="result", theorem=theorem, value=show_value(v), steps=r.steps)


def _indices(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


@main.command()
@click.argument("path")
@click.argument("theorem")
@click.argument("index")
@click.option("--fuel", default=1_000_000, show_default=True, help="Maximum rewrite steps per element.")
@click.pass_obj
def observe(out: Out, path: str, theorem: str, index: str, fuel: int) -> None:
    """Print stream elements of THEOREM at INDEX (a number or a range such as 0..4)."""
    try:
        g = _theorem(path, theorem)
        check_graph(g)
        shown = []
        for i in _indices(index):
            try:
                v = show_value(observe_stream(g, i, fuel))
            except OutOfFuel:
                v = "OUT_OF_FUEL"
            shown.append(v)
            if out.structured:
                out.emit("", kind="element", theorem=theorem, index=i, value=v)
    except CyclicProofError as e:
        _fail(out, e)
    if not out.structured:
        click.echo(" ".join(shown))


@main.command()
@click.argument("path")
@click.argument("left")
@click.argument("right")
@click.option("--depth", default=3, show_default=True, help="Observation depth for streams and probe size.")
@click.option("--fuel", default=1_000_000, show_default=True, help="Maximum rewrite steps.")
@click.pass_obj
def equiv(out: Out, path: str, left: str, right: str, depth: int, fuel: int) -> None:
    """Compare two theorems observationally up to --depth."""
    try:
        a, b = _theorem(path, left), _theorem(path, right)
        same = obs_equiv(a, b, depth, fuel)
    except CyclicProofError as e:
        _fail(out, e)
    out.emit("equivalent" if same else "different", kind="equiv", left=left, right=right, depth=depth,
             equivalent=same)
    sys.exit(0 if same else 1)


@main.command()
@click.argument("kind", type=click.Choice(["fold", "unfold", "lift", "algebra-maps", "coalgebra-maps"]))
@click.argument("functor")
@click.argument("argument", required=False)
@click.option("--file", "path", default="corpus", show_default=True, help="Proof file holding ARGUMENT.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the derived proof file here.")
@click.pass_obj
def derive(out: Out, kind: str, functor: str, argument: str | None, path: str, output: str | None) -> None:
    """Build a fold, unfold, lifting or (co)algebra map for the body FUNCTOR.

    ARGUMENT names a theorem of --file or one of the bundled arrows
    double-algebra, identity-algebra, copy-succ and unit-pairing.
    """
    try:
        pf = _load(path)
        body = parse_open_formula(functor, pf.abbrevs)
        if kind in ("fold", "unfold", "lift"):
            if argument is None:
                raise click.UsageError(f"{kind} needs an argument proof")
            arg = ALGEBRAS[argument]() if argument in ALGEBRAS else _theorem(path, argument)
            g = {"fold": fold, "unfold": unfold_coalg, "lift": lift_functor}[kind](body, arg)
            graphs = {kind: g}
        else:
            first, second = (algebra_maps if kind == "algebra-maps" else coalgebra_maps)(body)
            graphs = {first.name: first, second.name: second}
        for g in graphs.values():
            check_graph(g)
            if isinstance(check_validity(g), Invalid):
                raise KernelError("Invalid", f"derived proof {g.name} is not valid")
    except CyclicProofError as e:
        _fail(out, e)
    text = "\n".join(format_theorem(n, g) for n, g in graphs.items())
    if output:
        Path(output).write_text(text)
        out.emit(f"wrote {output}", kind="derive", path=output, theorems=list(graphs))
    elif out.structured:
        out.emit("", kind="derive", theorems=list(graphs), text=text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":  # pragma: no cover
    main()
