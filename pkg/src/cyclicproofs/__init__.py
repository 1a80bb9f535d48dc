"""Cyclic proofs with ordinal variables for a fixpoint logic: a proof
kernel, an infinite-descent validity checker, cut reduction, evaluation of
proofs as programs and the (co)algebra constructions."""

from .constraints import Constraint, chain, entails
from .errors import CyclicProofError, KernelError, OutOfFuel
from .kernel import ProofGraph, Sequent, check_graph, is_well_formed, unfold_prefix
from .prooffile import load_proof_file, parse_proof_file
from .syntax import INF, N, parse_formula, show
from .validity import Invalid, Valid, check_validity

__all__ = [
    "Constraint", "chain", "entails", "CyclicProofError", "KernelError", "OutOfFuel", "ProofGraph",
    "Sequent", "check_graph", "is_well_formed", "unfold_prefix", "load_proof_file", "parse_proof_file",
    "INF", "N", "parse_formula", "show", "Invalid", "Valid", "check_validity",
]
