"""Numerical tolerances shared by every module.

The defaults are tuned for double precision at small sizes (matrices up to a
few hundred rows).  Override them globally with :func:`set_tolerances` or
temporarily with the :func:`tolerances` context manager.
"""

from __future__ import annotations

import contextlib
import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance set.

    Attributes
    ----------
    herm : float
        Relative Hermitian defect; the absolute threshold for ``a`` is
        ``herm * max(1, ||a||_F)``.
    psd : float
        Smallest eigenvalue may dip to ``-psd * ||a||_2``.
    inv : float
        Minimum ratio of smallest to largest singular value (or eigenvalue
        of a frame operator) for invertibility.
    eq : float
        Identity residual tolerance, scaled by the matrix size at the
        call site.
    """

    herm: float = 1e-10
    psd: float = 1e-10
    inv: float = 1e-10
    eq: float = 1e-9

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


_current = Tolerances()


def get_tolerances() -> Tolerances:
    return _current


def set_tolerances(**overrides) -> Tolerances:
    """Replace the global tolerances; returns the previous set."""
    global _current
    previous = _current
    _current = dataclasses.replace(_current, **overrides)
    return previous


@contextlib.contextmanager
def tolerances(**overrides):
    previous = set_tolerances(**overrides)
    try:
        yield _current
    finally:
        set_tolerances(**previous.as_dict())


def resolve(tol: Tolerances | None) -> Tolerances:
    return _current if tol is None else tol
