"""Exact solvers and verification tools for recursive matroid depth parameters."""

from .core import RankTable
from .depth import ALL_MEASURES, Measure, depth, depth_with_witness, verify_witness
from .errors import (
    CapExceeded,
    InvalidExtension,
    InvalidInput,
    InvalidMatroid,
    MatroidDepthError,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_MEASURES",
    "CapExceeded",
    "InvalidExtension",
    "InvalidInput",
    "InvalidMatroid",
    "MatroidDepthError",
    "Measure",
    "RankTable",
    "depth",
    "depth_with_witness",
    "verify_witness",
    "__version__",
]
