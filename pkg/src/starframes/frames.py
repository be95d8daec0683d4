"""Operator frames and *-operator frames over a finite index set.

A family ``{T_i}`` of adjointable operators on H is a frame when the frame
operator ``S = sum_i T_i* T_i`` is invertible.  In flattened form ``S`` is
right multiplication by the Gram-type matrix ``G = sum_i M_i M_i^H`` and
``sum_i <T_i x, T_i x> = flat(x) G flat(x)^H``, so scalar frame bounds are
read off the extreme eigenvalues of ``G``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraElement, as_scalar, is_strictly_nonzero
from .config import Tolerances, resolve
from .errors import BadRank, ContextMismatch, DimensionMismatch, EmptyFrame, InvalidBounds
from .module import FrameContext, ModuleOperator, SequenceOperator


def _hermitize(mat: np.ndarray) -> np.ndarray:
    return 0.5 * (mat + mat.conj().swapaxes(-1, -2))


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Flattened frame operator ``G = sum_i M_i M_i^H`` (Hermitian PSD)."""

    ctx: FrameContext
    mat: np.ndarray

    @functools.cached_property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.mat)

    def as_operator(self) -> ModuleOperator:
        return ModuleOperator(self.ctx, self.mat)


@dataclass(frozen=True, eq=False)
class OperatorFrame:
    """Finite family ``{T_i}`` of module operators on a common context.

    ``ops`` must be non-empty.  The Gram matrix and, for genuine frames, its
    inverse are computed lazily and cached.
    """

    ctx: FrameContext
    ops: tuple[ModuleOperator, ...]
    label: str | None = field(default=None)

    def __post_init__(self):
        ops = tuple(self.ops)
        if not ops:
            raise EmptyFrame("a frame needs at least one operator")
        for op in ops:
            if op.ctx != self.ctx:
                raise ContextMismatch(f"operator context {op.ctx} != frame context {self.ctx}")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def from_mats(cls, ctx: FrameContext, mats, label: str | None = None) -> OperatorFrame:
        return cls(ctx, tuple(ModuleOperator(ctx, m) for m in mats), label)

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    @functools.cached_property
    def stack(self) -> np.ndarray:
        """Operator matrices as one ``(N, nk, nk)`` array."""
        return np.stack([op.mat for op in self.ops])

    @functools.cached_property
    def gram(self) -> GramMatrix:
        s = self.stack
        g = np.einsum("nij,nkj->ik", s, s.conj())
        return GramMatrix(self.ctx, _hermitize(g))

    @functools.cached_property
    def gram_eigh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.gram.mat)

    @functools.cached_property
    def gram_inverse(self) -> np.ndarray:
        """``G^{-1}`` from the Hermitian eigendecomposition.

        Only meaningful when :func:`is_frame` holds; callers check first.
        """
        lam, vecs = self.gram_eigh
        return _hermitize((vecs / lam) @ vecs.conj().T)

    def scale(self, c) -> OperatorFrame:
        c = as_scalar(c)
        return OperatorFrame(self.ctx, tuple(op.scale(c) for op in self.ops), self.label)

    def permuted(self, order) -> OperatorFrame:
        return OperatorFrame(self.ctx, tuple(self.ops[i] for i in order), self.label)


def frame_operator(F: OperatorFrame) -> GramMatrix:
    return F.gram


def analysis(F: OperatorFrame) -> SequenceOperator:
    """Frame transform ``x -> (T_i x)_i``; its adjoint is synthesis."""
    return SequenceOperator(F.ctx, F.ops)


def _extreme_eigs(F: OperatorFrame) -> tuple[float, float]:
    lam = F.gram.eigenvalues
    return float(lam[0]), float(lam[-1])


def optimal_scalar_bounds(F: OperatorFrame) -> tuple[float, float]:
    """Largest lower and smallest upper constant ``(a, b)``.

    ``a**2 <x,x> <= sum_i <T_i x, T_i x> <= b**2 <x,x>`` for all ``x`` is
    equivalent to ``a**2 I <= G <= b**2 I``, so the optimal pair is
    ``(sqrt(lambda_min(G)), sqrt(lambda_max(G)))``.
    """
    lo, hi = _extreme_eigs(F)
    return float(np.sqrt(max(lo, 0.0))), float(np.sqrt(max(hi, 0.0)))


def condition_number(F: OperatorFrame) -> float:
    lo, hi = _extreme_eigs(F)
    if lo <= 0.0:
        return float("inf")
    return hi / lo


def is_frame(F: OperatorFrame, tol: Tolerances | None = None) -> bool:
    tol = resolve(tol)
    lo, hi = _extreme_eigs(F)
    return bool(hi > 0.0 and lo >= tol.inv * hi)


def is_bessel(F: OperatorFrame) -> tuple[bool, float]:
    """Finite families are always Bessel; returns the optimal upper bound."""
    return True, optimal_scalar_bounds(F)[1]


@dataclass(frozen=True)
class StarBounds:
    """Lower and upper bounds, either positive reals or algebra elements.

    Scalar bounds ``a`` stand for the algebra elements ``a * 1_A``.
    """

    kind: str
    lower: float | AlgebraElement
    upper: float | AlgebraElement

    def __post_init__(self):
        if self.kind == "scalar":
            lo, hi = self.lower, self.upper
            if isinstance(lo, AlgebraElement) or isinstance(hi, AlgebraElement):
                raise InvalidBounds("scalar bounds must be real numbers")
            lo, hi = float(lo), float(hi)
            if not (np.isfinite(lo) and np.isfinite(hi) and 0.0 < lo <= hi):
                raise InvalidBounds(f"need 0 < lower <= upper, got ({lo}, {hi})")
            object.__setattr__(self, "lower", lo)
            object.__setattr__(self, "upper", hi)
        elif self.kind == "algebra":
            for name in ("lower", "upper"):
                value = getattr(self, name)
                if not isinstance(value, AlgebraElement):
                    raise InvalidBounds(f"{name} must be an AlgebraElement")
                if not is_strictly_nonzero(value):
                    raise InvalidBounds(f"{name} bound is not strictly nonzero (invertible)")
            if self.lower.dim != self.upper.dim:
                raise InvalidBounds("bound elements have different dims")
        else:
            raise InvalidBounds(f"unknown bounds kind {self.kind!r}")

    @classmethod
    def scalar(cls, lower: float, upper: float) -> StarBounds:
        return cls("scalar", lower, upper)

    @classmethod
    def algebra(cls, lower: AlgebraElement, upper: AlgebraElement) -> StarBounds:
        return cls("algebra", lower, upper)

    def elements(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        if self.kind == "scalar":
            return self.lower * np.eye(n), self.upper * np.eye(n)
        if self.lower.dim != n:
            raise DimensionMismatch(f"bounds live in M_{self.lower.dim}, frame in M_{n}")
        return self.lower.entries, self.upper.entries


@dataclass(frozen=True)
class SampleCheck:
    index: int
    lower_margin: float
    upper_margin: float
    passed: bool


@dataclass(frozen=True)
class StarBoundsReport:
    """Outcome of a sampled check of the *-frame inequalities.

    Margins are smallest eigenvalues of ``sum <T_i x, T_i x> - A<x,x>A*`` and
    ``B<x,x>B* - sum <T_i x, T_i x>``, divided by ``||<x,x>||``.  A sample
    fails when a margin drops below ``-threshold``.  Passing every sample is
    evidence, not a proof; ``exact`` holds the eigenvalue decision when the
    bounds are scalar.
    """

    samples: tuple[SampleCheck, ...]
    threshold: float
    seed: int
    exact: dict | None = None
    note: str = "sampled evidence only: passing samples do not prove the inequality for every x"

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.samples)

    @property
    def n_failed(self) -> int:
        return sum(not s.passed for s in self.samples)

    @property
    def worst_violation(self) -> float:
        worst = min(min(s.lower_margin, s.upper_margin) for s in self.samples)
        return max(0.0, -worst)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "n_samples": len(self.samples),
            "n_failed": self.n_failed,
            "worst_violation": self.worst_violation,
            "threshold": self.threshold,
            "seed": self.seed,
            "exact": self.exact,
            "note": self.note,
        }


def verify_star_bounds(F: OperatorFrame, bounds: StarBounds, samples: int = 1000,
                       seed: int = 0, tol: Tolerances | None = None) -> StarBoundsReport:
    """Check ``A<x,x>A* <= sum_i <T_i x, T_i x> <= B<x,x>B*`` on random ``x``.

    All samples are drawn and evaluated as one batch, so the result does not
    depend on evaluation order.
    """
    tol = resolve(tol)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n, nk = F.ctx.algebra_dim, F.ctx.flat_dim
    A, B = bounds.elements(n)
    G = F.gram.mat

    rng = np.random.default_rng(seed)
    shape = (samples, n, nk)
    X = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    XH = X.conj().swapaxes(1, 2)
    gram_x = X @ XH
    frame_x = X @ G @ XH
    lower_gap = _hermitize(frame_x - A @ gram_x @ A.conj().T)
    upper_gap = _hermitize(B @ gram_x @ B.conj().T - frame_x)

    norm_x = np.linalg.eigvalsh(_hermitize(gram_x))[:, -1]
    lower_margin = np.linalg.eigvalsh(lower_gap)[:, 0] / norm_x
    upper_margin = np.linalg.eigvalsh(upper_gap)[:, 0] / norm_x

    lam_max = float(F.gram.eigenvalues[-1])
    scale = max(lam_max, np.linalg.norm(A, 2) ** 2, np.linalg.norm(B, 2) ** 2)
    threshold = float(tol.psd * scale)
    checks = tuple(
        SampleCheck(i, float(lo), float(hi), bool(lo >= -threshold and hi >= -threshold))
        for i, (lo, hi) in enumerate(zip(lower_margin, upper_margin))
    )

    exact = None
    if bounds.kind == "scalar":
        lo_eig, hi_eig = _extreme_eigs(F)
        exact = {
            "lower_holds": bool(bounds.lower ** 2 <= lo_eig + threshold),
            "upper_holds": bool(bounds.upper ** 2 >= hi_eig - threshold),
        }
    return StarBoundsReport(checks, threshold, seed, exact)


def vector_frame(vectors, ctx: FrameContext | None = None,
                 label: str | None = None) -> OperatorFrame:
    """Operator frame ``{f -> <f, f_j>}`` induced by elements ``f_j`` of A.

    A is a Hilbert module over itself (rank 1), and ``<f, f_j> = f f_j*`` is
    right multiplication by ``f_j^H``.
    """
    elems = [v if isinstance(v, AlgebraElement) else AlgebraElement(v) for v in vectors]
    if not elems:
        raise EmptyFrame("need at least one vector")
    if ctx is None:
        ctx = FrameContext(elems[0].dim, 1)
    if ctx.module_rank != 1:
        raise BadRank(f"vector frames live on rank-1 modules, got k={ctx.module_rank}")
    for e in elems:
        if e.dim != ctx.algebra_dim:
            raise DimensionMismatch(f"vector dim {e.dim} != {ctx.algebra_dim}")
    return OperatorFrame.from_mats(ctx, [e.entries.conj().T for e in elems], label)


def random_frame(ctx: FrameContext, count: int, seed: int,
                 label: str | None = None) -> OperatorFrame:
    """``count`` operators with i.i.d. standard complex normal entries."""
    if count < 1:
        raise EmptyFrame("count must be >= 1")
    rng = np.random.default_rng(seed)
    nk = ctx.flat_dim
    shape = (count, nk, nk)
    mats = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return OperatorFrame.from_mats(ctx, mats, label)


def vector_frame_operator(vectors) -> np.ndarray:
    """Matrix of ``S f = sum_j <f, f_j> f_j`` on A, built by probing.

    ``S`` is a right multiplication ``f -> f @ S``, so applying it to the
    matrix unit with a single 1 at ``(0, a)`` exposes row ``a``.  This is the
    vector-side frame operator, computed without the induced operators.
    """
    elems = [v if isinstance(v, AlgebraElement) else AlgebraElement(v) for v in vectors]
    n = elems[0].dim
    rows = []
    for a in range(n):
        unit = np.zeros((n, n), dtype=np.complex128)
        unit[0, a] = 1.0
        f = AlgebraElement(unit)
        acc = AlgebraElement.zeros(n)
        for fj in elems:
            acc = acc + (f @ fj.H) @ fj
        rows.append(acc.entries[0])
    return np.array(rows)
