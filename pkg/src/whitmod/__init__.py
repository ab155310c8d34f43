"""Exact Whittaker-module computations for small-rank semisimple Lie algebras.

The package builds Chevalley bases for root systems of types A1 through A3
(and the rest of the rank <= 4 envelope), straightens products in the
universal enveloping algebra exactly over the rationals, realizes Verma
modules, the standard induced Whittaker modules, and the rank-1 universal
module in adapted PBW coordinates, and computes spaces of Whittaker vectors
by exact nullspaces over truncated bases.  The command line (``whitmod``)
wraps the same machinery with JSON configs and deterministic reports.
"""

from .errors import (
    ConfigError,
    DimensionMismatch,
    InvalidParams,
    MixedRootSystem,
    NonOrthogonalSupport,
    NotARoot,
    NotGraded,
    NotInNilradical,
    NotSimpleRoot,
    ReductionDivergence,
    TruncationNotClosed,
    UnknownLength,
    UnsupportedType,
    WhitmodError,
)
from .linalg import nullspace, rref, solve_exact
from .modules import (
    DirectSumPresentation,
    InducedPresentation,
    ModuleElement,
    act,
    build_module,
    bullet,
    bullet_depth,
)
from .parabolic import (
    CentralCharacter,
    ParabolicData,
    WhittakerCharacter,
    ZWeight,
    parabolic_data,
    zweight_leq,
)
from .pbw import Algebra, UEAElement, casimir_sl2, commutator, lie_to_uea, multiply, straighten
from .rootsystem import LieElement, RootSystem, bracket, build_root_system, root_string
from .solver import (
    Truncation,
    WhittakerReport,
    certify_simplicity,
    known_length,
    length_bound_check,
    sweep,
    truncated_basis,
    whittaker_vectors,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "CentralCharacter",
    "ConfigError",
    "DimensionMismatch",
    "DirectSumPresentation",
    "InducedPresentation",
    "InvalidParams",
    "LieElement",
    "MixedRootSystem",
    "ModuleElement",
    "NonOrthogonalSupport",
    "NotARoot",
    "NotGraded",
    "NotInNilradical",
    "NotSimpleRoot",
    "ParabolicData",
    "ReductionDivergence",
    "RootSystem",
    "Truncation",
    "TruncationNotClosed",
    "UEAElement",
    "UnknownLength",
    "UnsupportedType",
    "WhitmodError",
    "WhittakerCharacter",
    "WhittakerReport",
    "ZWeight",
    "act",
    "bracket",
    "build_module",
    "build_root_system",
    "bullet",
    "bullet_depth",
    "casimir_sl2",
    "certify_simplicity",
    "commutator",
    "known_length",
    "length_bound_check",
    "lie_to_uea",
    "multiply",
    "nullspace",
    "parabolic_data",
    "root_string",
    "rref",
    "solve_exact",
    "straighten",
    "sweep",
    "truncated_basis",
    "whittaker_vectors",
    "zweight_leq",
]
