"""Chern and Bismut curvature of left-invariant Hermitian structures on Lie groups."""

from .algebra import DEFAULT_TOL, FrameKind, HermitianLieAlgebra, classify, validate
from .curvature import (
    MixedParams,
    bismut_curvature,
    chern_curvature,
    chern_torsion,
    constant_mixed_test,
    first_ricci,
    is_btp,
    symmetrize,
)
from .errors import InputError, InternalError, PreconditionError
from .families import (
    AlmostAbelianParams,
    Codim2Params,
    almost_abelian_build,
    codim2_build,
    fixture,
)
from .search import SearchProblem, minimize

__all__ = [
    "DEFAULT_TOL",
    "AlmostAbelianParams",
    "Codim2Params",
    "FrameKind",
    "HermitianLieAlgebra",
    "InputError",
    "InternalError",
    "MixedParams",
    "PreconditionError",
    "SearchProblem",
    "almost_abelian_build",
    "bismut_curvature",
    "chern_curvature",
    "chern_torsion",
    "classify",
    "codim2_build",
    "constant_mixed_test",
    "first_ricci",
    "fixture",
    "is_btp",
    "minimize",
    "symmetrize",
    "validate",
]
