"""Precision context, error types and run configuration.

Every numeric routine takes a :class:`PrecisionContext` and works at
``ctx.dps = target_digits + guard_digits`` decimal digits.  mpmath keeps its
precision in a process-global context, so routines switch precision with
``mp.workdps(ctx.dps)`` and never mutate the caller's setting.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path


class LatticeLabError(Exception):
    """Base class for library errors."""


class DomainError(LatticeLabError, ValueError):
    """Argument outside the domain where a formula is valid."""


class PrecisionError(LatticeLabError, ArithmeticError):
    """A tail bound or quadrature tolerance could not be met within budget."""


class SeriesError(LatticeLabError, ValueError):
    """Invalid operation on truncated q-series."""


@dataclass(frozen=True)
class QuadPolicy:
    scheme: str = "tanh-sinh"
    max_subdivisions: int = 64
    abs_tol: float | None = None  # None: 10**-target_digits


@dataclass(frozen=True)
class PrecisionContext:
    target_digits: int = 25
    guard_digits: int = 10
    max_terms: int = 2_000_000
    quadrature: QuadPolicy = field(default_factory=QuadPolicy)

    def __post_init__(self):
        if self.target_digits < 1 or self.guard_digits < 1 or self.max_terms < 1:
            raise ValueError("precision fields must be positive")

    @property
    def dps(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def tol(self):
        """Absolute tolerance for tails and quadrature, as an mpf."""
        import mpmath as mp

        if self.quadrature.abs_tol is not None:
            return mp.mpf(self.quadrature.abs_tol)
        return mp.mpf(10) ** (-self.target_digits - 2)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return replace(self, target_digits=int(digits))

    def bumped(self, extra: int = 10) -> "PrecisionContext":
        return replace(self, target_digits=self.target_digits + extra)


DEFAULT_CONFIG = {
    "precision": "25",
    "cache_dir": "",
    "jobs": "1",
    "order": "200",
}


def load_config(path: str | os.PathLike | None = None) -> dict:
    """Read a ``key = value`` config file.

    Lookup order: explicit ``path``, ``$LATTICELAB_CONFIG``,
    ``~/.latticelab.conf``.  Lines starting with ``#`` are ignored and values
    may be quoted.  ``$LATTICELAB_PRECISION`` overrides ``precision``.
    """
    cfg = dict(DEFAULT_CONFIG)
    candidates = [path, os.environ.get("LATTICELAB_CONFIG"), Path.home() / ".latticelab.conf"]
    for cand in candidates:
        if cand and Path(cand).is_file():
            for raw in Path(cand).read_text().splitlines():
                line = raw.split("#", 1)[0].strip()
                if not line or "=" not in line:
                    continue
                key, val = (s.strip() for s in line.split("=", 1))
                cfg[key] = val.strip("'\"")
            break
    env = os.environ.get("LATTICELAB_PRECISION")
    if env:
        cfg["precision"] = env
    return cfg
