"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CyclicProofError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CyclicProofError):
    pass


class PositivityError(CyclicProofError):
    pass


class ScopeError(CyclicProofError):
    pass


class ShapeError(CyclicProofError):
    pass


class UnknownTerm(CyclicProofError):
    pass


class NameClash(CyclicProofError):
    pass


class NotChildOfRoot(CyclicProofError):
    pass


class KernelError(CyclicProofError):
    """A rule instance or graph violates a side condition.

    ``reason`` is a short stable code such as ``"ContextShape"`` and
    ``node`` names the offending node when the error comes from a graph.
    """

    def __init__(self, reason: str, detail: str = "", node: str | None = None):
        self.reason = reason
        self.detail = detail
        self.node = node
        where = f"node {node}: " if node is not None else ""
        msg = f"{where}{reason}" + (f" ({detail})" if detail else "")
        super().__init__(msg)


class MismatchedInterface(CyclicProofError):
    pass


class NotARedex(CyclicProofError):
    pass


class ShapeMismatch(CyclicProofError):
    pass


class NotNormal(CyclicProofError):
    pass


class NonCanonical(CyclicProofError):
    pass


class ArityMismatch(CyclicProofError):
    pass


class NotStreamType(CyclicProofError):
    pass


class OutOfFuel(CyclicProofError):
    """Reduction ran out of fuel; ``proof`` holds the last term reached."""

    def __init__(self, steps: int, proof=None):
        self.steps = steps
        self.proof = proof
        super().__init__(f"out of fuel after {steps} steps")


class MaterializeError(CyclicProofError):
    pass
