"""Tensor products of modules, operators, frames and dual pairs.

The left factor is always the outer (slow) Kronecker index: vectors flatten
to ``kron(flat(x), flat(y))``, operators to ``kron(M, N)``, and a product
frame lists ``T_i (x) U_j`` with ``i`` outer and ``j`` inner.  With a single
convention the mixed-product rule ``(M (x) N)(x (x) y) = Mx (x) Ny`` holds
with no permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .config import Tolerances, resolve
from .duals import DualPair, verify_dual
from .errors import ContextMismatch, LengthMismatch, NotADualPair
from .frames import OperatorFrame
from .module import FrameContext, ModuleOperator, ModuleVector


@dataclass(frozen=True)
class TensorContext:
    left: FrameContext
    right: FrameContext

    @property
    def product(self) -> FrameContext:
        return FrameContext(self.left.algebra_dim * self.right.algebra_dim,
                            self.left.module_rank * self.right.module_rank)


def _resolve_ctx(left: FrameContext, right: FrameContext,
                 tctx: TensorContext | None) -> TensorContext:
    if tctx is None:
        return TensorContext(left, right)
    if tctx.left != left or tctx.right != right:
        raise ContextMismatch(f"factors ({left}, {right}) do not match {tctx}")
    return tctx


def tensor_vector(x: ModuleVector, y: ModuleVector,
                  tctx: TensorContext | None = None) -> ModuleVector:
    tctx = _resolve_ctx(x.ctx, y.ctx, tctx)
    return ModuleVector(tctx.product, np.kron(x.flat, y.flat))


def tensor_operator(M: ModuleOperator, N: ModuleOperator,
                    tctx: TensorContext | None = None) -> ModuleOperator:
    tctx = _resolve_ctx(M.ctx, N.ctx, tctx)
    return ModuleOperator(tctx.product, np.kron(M.mat, N.mat))


def _kron_stacks(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # all pairs kron(a[i], b[j]), i outer
    n1, p, q = a.shape
    n2, r, s = b.shape
    out = np.einsum("iab,jcd->ijacbd", a, b)
    return out.reshape(n1 * n2, p * r, q * s)


def _kron_diagonal(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, p, q = a.shape
    _, r, s = b.shape
    return np.einsum("jab,jcd->jacbd", a, b).reshape(n, p * r, q * s)


def _label(*frames: OperatorFrame) -> str | None:
    if all(f.label for f in frames):
        return " (x) ".join(f.label for f in frames)
    return None


def tensor_frame(F: OperatorFrame, G: OperatorFrame,
                 tctx: TensorContext | None = None) -> OperatorFrame:
    """Product frame ``{T_i (x) U_j}`` in row-major ``(i, j)`` order."""
    tctx = _resolve_ctx(F.ctx, G.ctx, tctx)
    return OperatorFrame.from_mats(tctx.product, _kron_stacks(F.stack, G.stack), _label(F, G))


def _diagonal_frame(F: OperatorFrame, G: OperatorFrame) -> OperatorFrame:
    if len(F) != len(G):
        raise LengthMismatch(f"diagonal pairing needs equal sizes, got {len(F)} and {len(G)}")
    tctx = TensorContext(F.ctx, G.ctx)
    return OperatorFrame.from_mats(tctx.product, _kron_diagonal(F.stack, G.stack), _label(F, G))


def _require_pair(F: OperatorFrame, D: OperatorFrame, tol: Tolerances, which: str):
    pair = verify_dual(F, D, tol)
    if not pair.passed:
        raise NotADualPair(f"{which} factor is not a dual pair (residual {pair.residual:.3e})")


def verify_tensor_dual(F: OperatorFrame, Fd: OperatorFrame, G: OperatorFrame, Gd: OperatorFrame,
                       tol: Tolerances | None = None) -> DualPair:
    """Check that ``{~T_i (x) ~U_j}`` is dual to ``{T_i (x) U_j}``."""
    tol = resolve(tol)
    _require_pair(F, Fd, tol, "left")
    _require_pair(G, Gd, tol, "right")
    return verify_dual(tensor_frame(F, G), tensor_frame(Fd, Gd), tol)


def nfold_tensor(frames, duals, mode: str = "full", tol: Tolerances | None = None) -> DualPair:
    """Iterated (left-associated) tensor product of several dual pairs.

    ``mode="full"`` takes every index combination, as for two factors.
    ``mode="diagonal"`` pairs the ``j``-th operators of all factors, which
    requires equal family sizes.  The diagonal family is not a dual of the
    diagonal product in general; the returned residual reports whether it
    is for the given inputs.
    """
    tol = resolve(tol)
    frames, duals = list(frames), list(duals)
    if len(frames) != len(duals):
        raise LengthMismatch(f"{len(frames)} frames vs {len(duals)} duals")
    if len(frames) < 2:
        raise ValueError("need at least two factors")
    for i, (F, D) in enumerate(zip(frames, duals)):
        _require_pair(F, D, tol, f"factor {i}")
    if mode == "full":
        combine = tensor_frame
    elif mode == "diagonal":
        sizes = {len(F) for F in frames}
        if len(sizes) != 1:
            raise LengthMismatch(f"diagonal mode needs equal family sizes, got {sorted(sizes)}")
        combine = _diagonal_frame
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return verify_dual(reduce(combine, frames), reduce(combine, duals), tol)
