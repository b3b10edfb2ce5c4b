"""tautrel: exact-arithmetic verification of the degree-d tautological
relation obstruction for moduli of one-dimensional plane sheaves."""

__version__ = "0.1.0"

from .rat import QQ, Rat, rat
from .mpoly import MPoly, PolyDomain
from .ratfunc import FracField, RatFunc, mpoly_gcd
from .cubicext import CubicExt, CubicField, NotInvertible, ext_invert, factor_t3_minus_r
from .linalg import DimensionMismatch, ExactMatrix, NonSquareDet
from .tautalg import BetaClass, GradedPoly, TautContext, beta_pushforward, project_block
from .relations import (
    RelationSet,
    build_relation_set,
    enumerate_partitions,
    expand_relation,
    relation_factor,
    verify_rank12,
)
from .truncation import checkpoint_reference_M, matrices_M, matrices_N, truncation_block
from .obstruction import Verdict, congruent, decide, solve_AB, solve_S, solve_UV
from .constraint import constraint_analysis

__all__ = [
    "QQ",
    "Rat",
    "rat",
    "MPoly",
    "PolyDomain",
    "FracField",
    "RatFunc",
    "mpoly_gcd",
    "CubicExt",
    "CubicField",
    "NotInvertible",
    "ext_invert",
    "factor_t3_minus_r",
    "DimensionMismatch",
    "ExactMatrix",
    "NonSquareDet",
    "BetaClass",
    "GradedPoly",
    "TautContext",
    "beta_pushforward",
    "project_block",
    "RelationSet",
    "build_relation_set",
    "enumerate_partitions",
    "expand_relation",
    "relation_factor",
    "verify_rank12",
    "checkpoint_reference_M",
    "matrices_M",
    "matrices_N",
    "truncation_block",
    "Verdict",
    "congruent",
    "decide",
    "solve_AB",
    "solve_S",
    "solve_UV",
    "constraint_analysis",
]
