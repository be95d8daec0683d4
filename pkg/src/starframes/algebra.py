"""The matrix C*-algebra M_n(C).

Elements are immutable wrappers around ``n x n`` complex arrays.  The
involution is the conjugate transpose and the norm is the operator (spectral)
norm, so ``||a* a|| = ||a||**2`` holds up to rounding.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from numbers import Number

import numpy as np

from .config import Tolerances, resolve
from .errors import DimensionMismatch, NotHermitian, SingularElement


def as_scalar(z) -> complex:
    """Coerce ``z`` to a finite Python complex."""
    if not isinstance(z, Number):
        raise TypeError(f"expected a number, got {type(z).__name__}")
    z = complex(z)
    if not cmath.isfinite(z):
        raise ValueError(f"non-finite scalar {z!r}")
    return z


def _frozen_matrix(values, *, square: bool = True) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionMismatch("empty matrix")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element of M_n(C)."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen_matrix(self.entries))

    @classmethod
    def identity(cls, n: int) -> AlgebraElement:
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> AlgebraElement:
        return cls(np.zeros((n, n)))

    @classmethod
    def scalar(cls, n: int, value) -> AlgebraElement:
        return cls(as_scalar(value) * np.eye(n))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def H(self) -> AlgebraElement:
        return alg_adjoint(self)

    def __add__(self, other):
        return alg_arithmetic(self, other, "add")

    def __sub__(self, other):
        return alg_arithmetic(self, other, "sub")

    def __matmul__(self, other):
        return alg_arithmetic(self, other, "mul")

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_arithmetic(self, other, "mul")
        return alg_arithmetic(self, other, "scale")

    __rmul__ = __mul__

    def __neg__(self):
        return alg_arithmetic(self, -1.0, "scale")

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __repr__(self):
        return f"AlgebraElement(dim={self.dim}, entries={self.entries.tolist()!r})"


def _check_same_dim(a: AlgebraElement, b: AlgebraElement):
    if a.dim != b.dim:
        raise DimensionMismatch(f"algebra dims differ: {a.dim} vs {b.dim}")


def alg_arithmetic(a: AlgebraElement, b, op: str) -> AlgebraElement:
    """Ring operations on M_n(C).

    ``op`` is one of ``"add"``, ``"sub"``, ``"mul"`` (matrix product ``a b``)
    or ``"scale"``, in which case ``b`` is a complex scalar.
    """
    if op == "scale":
        return AlgebraElement(as_scalar(b) * a.entries)
    if not isinstance(b, AlgebraElement):
        raise TypeError(f"{op} needs two algebra elements")
    _check_same_dim(a, b)
    if op == "add":
        return AlgebraElement(a.entries + b.entries)
    if op == "sub":
        return AlgebraElement(a.entries - b.entries)
    if op == "mul":
        return AlgebraElement(a.entries @ b.entries)
    raise ValueError(f"unknown operation {op!r}")


def alg_adjoint(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.entries.conj().T)


def hermitian_defect(a: AlgebraElement) -> float:
    return float(np.linalg.norm(a.entries - a.entries.conj().T))


def _herm_threshold(mat: np.ndarray, tol: Tolerances) -> float:
    return tol.herm * max(1.0, float(np.linalg.norm(mat)))


def spectrum_hermitian(a: AlgebraElement, tol: Tolerances | None = None) -> list[float]:
    """Ascending eigenvalues of a Hermitian element.

    Raises
    ------
    NotHermitian
        If ``||a - a*||_F`` exceeds the Hermitian tolerance.
    """
    tol = resolve(tol)
    if hermitian_defect(a) > _herm_threshold(a.entries, tol):
        raise NotHermitian(f"Hermitian defect {hermitian_defect(a):.3e} too large")
    return np.linalg.eigvalsh(a.entries).tolist()


def is_positive(a: AlgebraElement, tol: Tolerances | None = None) -> bool:
    tol = resolve(tol)
    if hermitian_defect(a) > _herm_threshold(a.entries, tol):
        return False
    herm = 0.5 * (a.entries + a.entries.conj().T)
    lam = np.linalg.eigvalsh(herm)
    return bool(lam[0] >= -tol.psd * max(abs(lam[0]), abs(lam[-1])))


def singular_values(a: AlgebraElement) -> np.ndarray:
    return np.linalg.svd(a.entries, compute_uv=False)


def is_strictly_nonzero(a: AlgebraElement, tol: Tolerances | None = None) -> bool:
    # read as "invertible": bounded away from zero in every direction
    tol = resolve(tol)
    s = singular_values(a)
    return bool(s[0] > 0 and s[-1] >= tol.inv * s[0])


def alg_inverse(a: AlgebraElement, tol: Tolerances | None = None) -> AlgebraElement:
    if not is_strictly_nonzero(a, tol):
        raise SingularElement("element is not invertible at the configured tolerance")
    return AlgebraElement(np.linalg.inv(a.entries))


def operator_norm(a: AlgebraElement) -> float:
    return float(singular_values(a)[0])
