"""Reading and writing the textual proof-file format.

::

    # comment
    define N[o] := mu[o]X. T \\/ X
    theorem add : x : N[inf], y : N[inf] |- N[inf]
      node r : x : N[inf], y : N[inf] |- N[inf] = muL(inf, a, x, z) [c]
      ...
      node l : b < a < inf ; ... |- N[inf] = back c { a := b }

The first node of a theorem is its root.  A back-edge may omit its
sequent, in which case it is the companion sequent renamed by sigma at the
constraint its parent hands up.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .constraints import extend, parse_constraint, show_constraint
from .errors import KernelError, ParseError
from .kernel import Back, ProofGraph, Sequent, Step, rename_sequent, rule_args, rule_from_text, _TEXT_NAMES
from .syntax import INF, Abbrev, check_ordinal, parse_formula, show


@dataclass
class Theorem:
    name: str
    graph: ProofGraph
    expect_invalid: bool = False
    line: int = 0


@dataclass
class ProofFile:
    abbrevs: dict[str, Abbrev] = field(default_factory=dict)
    theorems: dict[str, Theorem] = field(default_factory=dict)

    def __getitem__(self, name: str) -> ProofGraph:
        if name not in self.theorems:
            raise KeyError(f"no theorem named {name!r}")
        return self.theorems[name].graph


def parse_sequent(text: str, abbrevs: dict[str, Abbrev]) -> Sequent:
    if "|-" not in text:
        raise ParseError(f"sequent without '|-': {text!r}")
    lhs, rhs = text.split("|-", 1)
    if ";" in lhs:
        ctext, xtext = lhs.split(";", 1)
    elif ":" in lhs:
        ctext, xtext = "", lhs
    else:
        ctext, xtext = lhs, ""
    o = parse_constraint(ctext)
    ctx = []
    if xtext.strip():
        for item in xtext.split(","):
            if ":" not in item:
                raise ParseError(f"context entry needs 'name : formula': {item.strip()!r}")
            n, f = item.split(":", 1)
            n = n.strip()
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", n):
                raise ParseError(f"bad hypothesis name {n!r}")
            ctx.append((n, parse_formula(f, abbrevs)))
    return Sequent(o, tuple(ctx), parse_formula(rhs, abbrevs))


_DEFINE = re.compile(r"define\s+([A-Za-z_]\w*)\s*(?:\[\s*([A-Za-z_]\w*)\s*\])?\s*:=\s*(.+)$")
_THEOREM = re.compile(r"theorem\s+([A-Za-z_][\w']*)\s*:\s*(.+?)(\s+expect\s+invalid)?$")
_NODE = re.compile(r"node\s+([\w']+)\s*(?::\s*(.+?))?\s*=\s*(.+)$")
_BACK = re.compile(r"back\s+([\w']+)\s*(?:\{(.*)\})?\s*$")
_RULE = re.compile(r"([A-Za-z]+)\s*(?:\(([^)]*)\))?\s*(?:\[\s*(?:premises\s*:)?([^\]]*)\])?\s*$")


def parse_proof_file(text: str) -> ProofFile:
    pf = ProofFile()
    current: dict | None = None

    def finish() -> None:
        if current is None:
            return
        if not current["order"]:
            raise ParseError(f"theorem {current['name']} has no nodes (line {current['line']})")
        g = _assemble(current)
        pf.theorems[current["name"]] = Theorem(current["name"], g, current["invalid"], current["line"])

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("define"):
                m = _DEFINE.match(line)
                if not m:
                    raise ParseError("malformed define")
                name, param, body = m.groups()
                if name in pf.abbrevs or name in ("mu", "nu", "T", "X"):
                    raise ParseError(f"abbreviation {name!r} redefined")
                # a parameter is parsed as an ordinal variable and renamed on use
                pf.abbrevs[name] = Abbrev(param, parse_formula(body, pf.abbrevs))
            elif line.startswith("theorem"):
                finish()
                m = _THEOREM.match(line)
                if not m:
                    raise ParseError("malformed theorem header")
                name, seq, inv = m.groups()
                if name in pf.theorems:
                    raise ParseError(f"theorem {name!r} defined twice")
                current = {"name": name, "sequent": parse_sequent(seq, pf.abbrevs), "invalid": bool(inv),
                           "nodes": {}, "order": [], "line": lineno}
            elif line.startswith("node"):
                if current is None:
                    raise ParseError("node outside a theorem")
                m = _NODE.match(line)
                if not m:
                    raise ParseError("malformed node line")
                nid, seq, body = m.groups()
                if nid in current["nodes"]:
                    raise ParseError(f"node {nid} defined twice")
                s = parse_sequent(seq, pf.abbrevs) if seq else None
                bm = _BACK.match(body)
                if bm:
                    comp, sig = bm.groups()
                    current["nodes"][nid] = ("back", s, comp, _parse_sigma(sig or ""))
                else:
                    rm = _RULE.match(body)
                    if not rm:
                        raise ParseError(f"malformed rule {body!r}")
                    rname, args, prems = rm.groups()
                    if s is None:
                        raise ParseError("only back-edges may omit their sequent")
                    arglist = [a.strip() for a in args.split(",")] if args and args.strip() else []
                    rule = rule_from_text(rname, arglist)
                    for t in rule.ordinals():
                        check_ordinal(t)
                    plist = tuple(p.strip() for p in prems.split(",") if p.strip()) if prems else ()
                    current["nodes"][nid] = ("step", s, rule, plist)
                current["order"].append(nid)
            else:
                raise ParseError(f"unrecognized line {line!r}")
        except (ParseError, KernelError) as e:
            if isinstance(e, KernelError):
                raise KernelError(e.reason, f"line {lineno}: {e.detail}", e.node) from None
            raise ParseError(f"line {lineno}: {e}") from None
    finish()
    return pf


def _parse_sigma(text: str) -> tuple[tuple[str, str], ...]:
    out = []
    for item in text.split(","):
        if not item.strip():
            continue
        if ":=" not in item:
            raise ParseError(f"renaming entry needs ':=': {item.strip()!r}")
        x, y = (s.strip() for s in item.split(":=", 1))
        out.append((check_ordinal(x), check_ordinal(y)))
    return tuple(out)


def _assemble(th: dict) -> ProofGraph:
    raw = th["nodes"]
    root = th["order"][0]
    parent: dict[str, str] = {}
    for nid, spec in raw.items():
        if spec[0] == "step":
            for p in spec[3]:
                if p not in raw:
                    raise ParseError(f"theorem {th['name']}: node {nid} refers to undefined {p}")
                parent[p] = nid
    nodes = {}

    def resolve(nid: str) -> Sequent:
        spec = raw[nid]
        if spec[1] is not None:
            return spec[1]
        comp = raw.get(spec[2])
        if comp is None or comp[0] != "step":
            raise ParseError(f"theorem {th['name']}: back-edge {nid} has no usable companion")
        if nid not in parent:
            raise ParseError(f"theorem {th['name']}: back-edge {nid} has no parent")
        par = raw[parent[nid]]
        o = resolve(parent[nid]).constraint
        r = par[2]
        if r.eigen is not None:
            o = extend(o, r.outer, r.eigen)
        sig = dict(spec[3])
        sig.setdefault(INF, INF)
        return rename_sequent(comp[1], sig, None, o)

    for nid in th["order"]:
        spec = raw[nid]
        s = resolve(nid)
        if spec[0] == "step":
            nodes[nid] = Step(s, spec[2], spec[3])
        else:
            nodes[nid] = Back(s, spec[2], spec[3])
    g = ProofGraph(nodes, root, th["name"])
    if nodes[root].sequent != th["sequent"]:
        raise KernelError("RootMismatch", "theorem statement differs from the root sequent", root)
    return g


def load_proof_file(path: str | Path) -> ProofFile:
    return parse_proof_file(Path(path).read_text())


# ---------------------------------------------------------------- writing


def format_sequent(s: Sequent) -> str:
    parts = []
    c = show_constraint(s.constraint)
    ctx = ", ".join(f"{n} : {show(f)}" for n, f in s.context)
    if c:
        parts.append(c + " ;")
    if ctx:
        parts.append(ctx)
    parts.append("|- " + show(s.conclusion))
    return " ".join(parts)


def format_theorem(name: str, g: ProofGraph, expect_invalid: bool = False) -> str:
    lines = [f"theorem {name} : {format_sequent(g.conclusion)}" + (" expect invalid" if expect_invalid else "")]
    for nid in g.preorder():
        n = g.nodes[nid]
        if isinstance(n, Step):
            args = rule_args(n.rule)
            r = _TEXT_NAMES[n.rule.kind] + (f"({', '.join(args)})" if args else "")
            prem = f" [{', '.join(n.premises)}]" if n.premises else ""
            lines.append(f"  node {nid} : {format_sequent(n.sequent)} = {r}{prem}")
        else:
            sig = ", ".join(f"{x} := {y}" for x, y in n.sigma if not (x == INF and y == INF))
            lines.append(f"  node {nid} : {format_sequent(n.sequent)} = back {n.companion} {{ {sig} }}")
    return "\n".join(lines) + "\n"


def format_proof_file(theorems: dict[str, ProofGraph]) -> str:
    return "\n".join(format_theorem(n, g) for n, g in theorems.items())
