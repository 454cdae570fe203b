"""Exact computations in the two-parameter quantum matrix semigroup A_{r,s}(n)."""

from .identities import IDENTITIES, UnsupportedRequest, confluence_check, run_suite, verify_identity
from .matrix import GenMatrix, generator_matrix
from .ncalg import (
    AlgebraSpec,
    Letter,
    NCPoly,
    coproduct,
    counit,
    generic_spec,
    numeric_spec,
    q_inverse_spec,
    q_negative_spec,
)
from .qlinalg import build_B, build_Bprime, cdet, hf_full, per_q, pf_full, rdet
from .ratfunc import RatFunc, SpecializationPole
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "GenMatrix",
    "IDENTITIES",
    "Letter",
    "NCPoly",
    "RatFunc",
    "Report",
    "SpecializationPole",
    "UnsupportedRequest",
    "build_B",
    "build_Bprime",
    "cdet",
    "confluence_check",
    "coproduct",
    "counit",
    "generator_matrix",
    "generic_spec",
    "hf_full",
    "numeric_spec",
    "per_q",
    "pf_full",
    "q_inverse_spec",
    "q_negative_spec",
    "rdet",
    "run_suite",
    "verify_identity",
]
