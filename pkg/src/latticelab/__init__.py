"""Lattice sums, Mahler measures and the q-series identities linking them."""

from .context import (
    DomainError,
    LatticeLabError,
    PrecisionContext,
    PrecisionError,
    QuadPolicy,
    SeriesError,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "LatticeLabError",
    "PrecisionContext",
    "PrecisionError",
    "QuadPolicy",
    "SeriesError",
]
