"""The Hilbert module H = A^k over A = M_n(C) and the sequence space H^N.

A vector ``x = (x_1, ..., x_k)`` is stored flattened as the ``n x nk`` matrix
``[x_1 x_2 ... x_k]``.  With that layout

* the left action is ``a . x  ->  a @ flat(x)``,
* the inner product is ``<x, y> = sum_i x_i y_i* = flat(x) @ flat(y)^H``
  (linear in the first slot),
* every adjointable module map is right multiplication by an ``nk x nk``
  matrix, and its adjoint is right multiplication by the conjugate
  transpose.

Right multiplication reverses composition order: "apply ``M2`` then ``M1``"
has matrix ``M2.mat @ M1.mat``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement, _frozen_matrix, as_scalar
from .errors import ContextMismatch, DimensionMismatch, IndexOutOfRange, LengthMismatch


@dataclass(frozen=True)
class FrameContext:
    """Algebra dimension ``n`` and module rank ``k``."""

    algebra_dim: int
    module_rank: int

    def __post_init__(self):
        for name in ("algebra_dim", "module_rank"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def flat_dim(self) -> int:
        """Width ``n k`` of a flattened vector."""
        return self.algebra_dim * self.module_rank


def _check_ctx(a, b):
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")


def _frozen(arr, shape, what) -> np.ndarray:
    arr = _frozen_matrix(arr, square=False)
    if arr.shape != shape:
        raise DimensionMismatch(f"{what} must have shape {shape}, got {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class ModuleVector:
    ctx: FrameContext
    flat: np.ndarray

    def __post_init__(self):
        n, nk = self.ctx.algebra_dim, self.ctx.flat_dim
        object.__setattr__(self, "flat", _frozen(self.flat, (n, nk), "flattened vector"))

    @classmethod
    def from_coords(cls, ctx: FrameContext, coords) -> ModuleVector:
        coords = list(coords)
        if len(coords) != ctx.module_rank:
            raise DimensionMismatch(f"expected {ctx.module_rank} coordinates, got {len(coords)}")
        blocks = []
        for c in coords:
            c = c if isinstance(c, AlgebraElement) else AlgebraElement(c)
            if c.dim != ctx.algebra_dim:
                raise DimensionMismatch(f"coordinate dim {c.dim} != {ctx.algebra_dim}")
            blocks.append(c.entries)
        return cls(ctx, np.hstack(blocks))

    @classmethod
    def zeros(cls, ctx: FrameContext) -> ModuleVector:
        return cls(ctx, np.zeros((ctx.algebra_dim, ctx.flat_dim)))

    @property
    def coords(self) -> tuple[AlgebraElement, ...]:
        n = self.ctx.algebra_dim
        return tuple(AlgebraElement(self.flat[:, i * n:(i + 1) * n])
                     for i in range(self.ctx.module_rank))

    def __add__(self, other: ModuleVector) -> ModuleVector:
        _check_ctx(self, other)
        return ModuleVector(self.ctx, self.flat + other.flat)

    def __sub__(self, other: ModuleVector) -> ModuleVector:
        _check_ctx(self, other)
        return ModuleVector(self.ctx, self.flat - other.flat)

    def scale(self, c) -> ModuleVector:
        return ModuleVector(self.ctx, as_scalar(c) * self.flat)

    def norm(self) -> float:
        """Frobenius norm of the flattened matrix, ``sqrt(tr <x, x>)``."""
        return float(np.linalg.norm(self.flat))


@dataclass(frozen=True, eq=False)
class ModuleOperator:
    """Adjointable map ``x -> x @ mat`` on the flattened module."""

    ctx: FrameContext
    mat: np.ndarray

    def __post_init__(self):
        nk = self.ctx.flat_dim
        object.__setattr__(self, "mat", _frozen(self.mat, (nk, nk), "operator matrix"))

    @classmethod
    def identity(cls, ctx: FrameContext) -> ModuleOperator:
        return cls(ctx, np.eye(ctx.flat_dim))

    @classmethod
    def zeros(cls, ctx: FrameContext) -> ModuleOperator:
        return cls(ctx, np.zeros((ctx.flat_dim, ctx.flat_dim)))

    @property
    def H(self) -> ModuleOperator:
        return op_adjoint(self)

    def __call__(self, x: ModuleVector) -> ModuleVector:
        return op_apply(self, x)

    def __add__(self, other: ModuleOperator) -> ModuleOperator:
        _check_ctx(self, other)
        return ModuleOperator(self.ctx, self.mat + other.mat)

    def __sub__(self, other: ModuleOperator) -> ModuleOperator:
        _check_ctx(self, other)
        return ModuleOperator(self.ctx, self.mat - other.mat)

    def scale(self, c) -> ModuleOperator:
        return ModuleOperator(self.ctx, as_scalar(c) * self.mat)


@dataclass(frozen=True, eq=False)
class SequenceVector:
    """Finite sequence ``(y_1, ..., y_N)`` in H^N; ``N = 0`` is allowed."""

    ctx: FrameContext
    items: tuple[ModuleVector, ...]

    def __post_init__(self):
        items = tuple(self.items)
        for y in items:
            _check_ctx(self, y)
        object.__setattr__(self, "items", items)

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True, eq=False)
class SequenceOperator:
    """Map H -> H^N given by ``N`` operator rows, ``x -> (R_i x)_i``."""

    ctx: FrameContext
    rows: tuple[ModuleOperator, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        for r in rows:
            _check_ctx(self, r)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_mats(cls, ctx: FrameContext, mats) -> SequenceOperator:
        return cls(ctx, tuple(ModuleOperator(ctx, m) for m in mats))

    def __len__(self):
        return len(self.rows)

    @property
    def stack(self) -> np.ndarray:
        """Row matrices stacked into shape ``(N, nk, nk)``."""
        nk = self.ctx.flat_dim
        if not self.rows:
            return np.zeros((0, nk, nk), dtype=np.complex128)
        return np.stack([r.mat for r in self.rows])

    @property
    def block(self) -> np.ndarray:
        """The ``nk x N nk`` matrix of the whole map in flattened form.

        ``x -> x @ block`` yields the items of the image side by side.
        """
        nk = self.ctx.flat_dim
        if not self.rows:
            return np.zeros((nk, 0), dtype=np.complex128)
        return np.hstack([r.mat for r in self.rows])


def inner_product(x: ModuleVector, y: ModuleVector) -> AlgebraElement:
    """A-valued inner product ``<x, y> = sum_i x_i y_i*``."""
    _check_ctx(x, y)
    return AlgebraElement(x.flat @ y.flat.conj().T)


def module_action(a: AlgebraElement, x: ModuleVector) -> ModuleVector:
    if a.dim != x.ctx.algebra_dim:
        raise ContextMismatch(f"algebra element dim {a.dim} != {x.ctx.algebra_dim}")
    return ModuleVector(x.ctx, a.entries @ x.flat)


def op_apply(M: ModuleOperator, x: ModuleVector) -> ModuleVector:
    _check_ctx(M, x)
    return ModuleVector(x.ctx, x.flat @ M.mat)


def op_adjoint(M: ModuleOperator) -> ModuleOperator:
    return ModuleOperator(M.ctx, M.mat.conj().T)


def op_compose(M1: ModuleOperator, M2: ModuleOperator) -> ModuleOperator:
    """The map ``x -> M1(M2(x))``.  Its matrix is ``M2.mat @ M1.mat``."""
    _check_ctx(M1, M2)
    return ModuleOperator(M1.ctx, M2.mat @ M1.mat)


def coordinate_projection(i: int, s: SequenceVector) -> ModuleVector:
    if not 0 <= i < len(s.items):
        raise IndexOutOfRange(f"index {i} outside 0..{len(s.items) - 1}")
    return s.items[i]


def sequence_apply(P: SequenceOperator, x: ModuleVector) -> SequenceVector:
    _check_ctx(P, x)
    return SequenceVector(x.ctx, tuple(op_apply(r, x) for r in P.rows))


def sequence_adjoint_apply(P: SequenceOperator, s: SequenceVector) -> ModuleVector:
    """Synthesis ``(y_i)_i -> sum_i R_i* y_i``."""
    _check_ctx(P, s)
    if len(P.rows) != len(s.items):
        raise LengthMismatch(f"{len(P.rows)} rows vs {len(s.items)} items")
    acc = np.zeros((P.ctx.algebra_dim, P.ctx.flat_dim), dtype=np.complex128)
    for r, y in zip(P.rows, s.items):
        acc = acc + y.flat @ r.mat.conj().T
    return ModuleVector(P.ctx, acc)


def sequence_inner_product(s: SequenceVector, t: SequenceVector) -> AlgebraElement:
    """Inner product on H^N: the sum of itemwise inner products."""
    _check_ctx(s, t)
    if len(s.items) != len(t.items):
        raise LengthMismatch(f"{len(s.items)} vs {len(t.items)} items")
    acc = np.zeros((s.ctx.algebra_dim,) * 2, dtype=np.complex128)
    for a, b in zip(s.items, t.items):
        acc = acc + a.flat @ b.flat.conj().T
    return AlgebraElement(acc)


def random_vector(ctx: FrameContext, rng: np.random.Generator) -> ModuleVector:
    """Vector with i.i.d. standard complex normal entries."""
    shape = (ctx.algebra_dim, ctx.flat_dim)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return ModuleVector(ctx, z)
