"""Unitary braid matrices of even and odd dimensions and the structures built from them."""

__version__ = "0.1.0"

from .braidgen import BraidSpec, OddBraidParams, build_braid, build_generators, build_odd_braid, rhat
from .conformance import ResidualReport, check_baxterized, check_braid
from .links import BraidWord, build_enhanced, invariant
from .tensorcore import StructuredBraidOp, apply_generator

__all__ = [
    "BraidSpec",
    "BraidWord",
    "OddBraidParams",
    "ResidualReport",
    "StructuredBraidOp",
    "apply_generator",
    "build_braid",
    "build_enhanced",
    "build_generators",
    "build_odd_braid",
    "check_baxterized",
    "check_braid",
    "invariant",
    "rhat",
]
