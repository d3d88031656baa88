"""Exact-arithmetic computer algebra for Leibniz and Lie n-algebras."""

from .exactla import (
    Field,
    LinearMap,
    QuotientSpace,
    Subspace,
    kernel_image,
    quotient_space,
    span,
    subspace_intersect,
    subspace_sum,
)
from .nalg import (
    AlgebraMorphism,
    Ideal,
    NaryAlgebra,
    Permutation,
    abelianization,
    commutator,
    daletskii,
    direct_sum,
    free_nilpotent2,
    ideal_closure,
    kernel_ideal,
    kernel_pair,
    liesation,
    quotient_algebra,
    validate_leibniz,
    validate_lie,
)
from .ext import (
    Cube,
    GaloisStructure,
    central_obstruction,
    centralize1,
    cube_1,
    cube_from_ideals,
    is_central,
    is_central_oracle,
    is_extension,
)
from .homology import (
    HopfReport,
    UceResult,
    compare_uce,
    h2_via_uce,
    hopf_evaluate,
    is_perfect,
    uce_leibniz,
    uce_lie,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
