"""Exact computations with rings whose additive group is finitely generated.

Invariant ideals, rings of scalars of bilinear maps, prime decompositions in
scalar rings, isomorphism search and a decision procedure for elementary
equivalence with checkable certificates.
"""

__version__ = "0.1.0"

from .ring_core import (  # noqa: E402
    PresentationError,
    RingPresentation,
    ScalarRingPresentation,
    TwoSortedAlgebraPresentation,
    TwoSortedModulePresentation,
    change_basis,
    validate,
)
from .verdict import Verdict, VerdictKind  # noqa: E402

__all__ = [
    "PresentationError",
    "RingPresentation",
    "ScalarRingPresentation",
    "TwoSortedAlgebraPresentation",
    "TwoSortedModulePresentation",
    "Verdict",
    "VerdictKind",
    "change_basis",
    "validate",
]
