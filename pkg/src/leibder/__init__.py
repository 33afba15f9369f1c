"""Exact derivation, antiderivation and biderivation spaces of algebras."""

from __future__ import annotations

from .algebra import Algebra, check_leibniz, lower_central_series
from .catalog import get as catalog_get
from .linalg import RatMatrix
from .parser import parse_algebra
from .solver import SpaceKind, compute_space, general_element

__all__ = [
    "Algebra",
    "RatMatrix",
    "SpaceKind",
    "catalog_get",
    "check_leibniz",
    "compute_space",
    "general_element",
    "lower_central_series",
    "parse_algebra",
]
