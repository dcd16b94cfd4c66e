"""Exact computations for hypersurfaces in CP^4 with a single A_k singularity."""

from .errors import DomainError
from .polynomial import Poly, Weights, format_poly, parse_poly

__all__ = ["DomainError", "Poly", "Weights", "format_poly", "parse_poly"]
__version__ = "0.1.0"
