"""Dual frames: canonical dual, duality checks and the parametrization of
all duals of a frame.

Notation in flattened form: frame matrices ``M_i``, dual matrices ``W_i``,
Gram matrix ``G = sum M_i M_i^H``.  A pair is dual when
``sum_i T_i* Lambda_i = I``, i.e. ``sum_i W_i M_i^H = I``.  The canonical dual
``T_i S^{-1}`` has matrices ``G^{-1} M_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement
from .config import Tolerances, resolve
from .errors import ContextMismatch, LengthMismatch, NotADualPair, NotAFrame, NotARightInverse
from .frames import OperatorFrame, analysis, is_frame, vector_frame, vector_frame_operator
from .module import (
    ModuleVector,
    SequenceOperator,
    inner_product,
    random_vector,
    sequence_adjoint_apply,
    sequence_apply,
)


@dataclass(frozen=True, eq=False)
class DualPair:
    """Result of a duality check.

    ``residual`` is ``||sum_i W_i M_i^H - I||_F``; the reconstruction error
    is the worst relative error ``||x - sum T_i* Lambda_i x|| / ||x||`` over
    ``n_samples`` random vectors.
    """

    frame: OperatorFrame
    dual: OperatorFrame
    residual: float
    n_samples: int
    max_reconstruction_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance
                    and self.max_reconstruction_error <= self.tolerance)

    def to_json(self) -> dict:
        return {
            "residual": self.residual,
            "n_samples": self.n_samples,
            "max_reconstruction_error": self.max_reconstruction_error,
            "pass": self.passed,
        }


def _mats(obj) -> np.ndarray:
    # OperatorFrame and SequenceOperator both expose a (N, nk, nk) stack
    return obj.stack


def _check_pair(F: OperatorFrame, other):
    if F.ctx != other.ctx:
        raise ContextMismatch(f"{F.ctx} vs {other.ctx}")
    n_other = len(other.ops) if isinstance(other, OperatorFrame) else len(other.rows)
    if len(F.ops) != n_other:
        raise LengthMismatch(f"{len(F.ops)} vs {n_other} operators")


def _require_frame(F: OperatorFrame, tol: Tolerances):
    if not is_frame(F, tol):
        raise NotAFrame("frame operator is numerically singular")
    return F.gram_inverse


def synthesis_product(F: OperatorFrame, D) -> np.ndarray:
    """Matrix of ``sum_i T_i* Lambda_i``, i.e. ``sum_i W_i M_i^H``."""
    return np.einsum("nij,nkj->ik", _mats(D), F.stack.conj())


def canonical_dual(F: OperatorFrame, tol: Tolerances | None = None) -> OperatorFrame:
    """The dual ``{T_i S^{-1}}``, matrices ``G^{-1} M_i``.

    Raises
    ------
    NotAFrame
        If ``G`` fails the invertibility test of :func:`is_frame`.
    """
    g_inv = _require_frame(F, resolve(tol))
    mats = np.einsum("ij,njk->nik", g_inv, F.stack)
    label = f"canonical dual of {F.label}" if F.label else None
    return OperatorFrame.from_mats(F.ctx, mats, label)


def verify_dual(F: OperatorFrame, D: OperatorFrame, tol: Tolerances | None = None,
                samples: int = 10, seed: int = 0) -> DualPair:
    tol = resolve(tol)
    _check_pair(F, D)
    nk = F.ctx.flat_dim
    residual = float(np.linalg.norm(synthesis_product(F, D) - np.eye(nk)))

    theta, eta = analysis(F), analysis(D)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = random_vector(F.ctx, rng)
        rec = sequence_adjoint_apply(theta, sequence_apply(eta, x))
        worst = max(worst, (x - rec).norm() / x.norm())
    return DualPair(F, D, residual, samples, worst, tol.eq * nk)


def theta_eta_identity(F: OperatorFrame, D: OperatorFrame) -> float:
    """``||theta* eta - I||_F`` assembled from the block transform matrices."""
    _check_pair(F, D)
    theta, eta = analysis(F).block, analysis(D).block
    # eta first, then theta*: x -> x @ eta @ theta^H
    return float(np.linalg.norm(eta @ theta.conj().T - np.eye(F.ctx.flat_dim)))


def _parametrize(F: OperatorFrame, extra: np.ndarray, tol: Tolerances) -> np.ndarray:
    # G^{-1} M_j + Q_j - (sum_k Q_k M_k^H) G^{-1} M_j
    g_inv = _require_frame(F, tol)
    canon = np.einsum("ij,njk->nik", g_inv, F.stack)
    E = np.einsum("nij,nkj->ik", extra, F.stack.conj())
    return canon + extra - np.einsum("ij,njk->nik", E, canon)


def dual_from_bessel(F: OperatorFrame, Delta, tol: Tolerances | None = None) -> OperatorFrame:
    """Dual ``Omega_j = ~Lambda_j + Delta_j - sum_k ~Lambda_j Lambda_k* Delta_k``.

    ``Delta`` is any family (every finite family is Bessel) with the frame's
    context and length.  Composition order inside the sum is "``Delta_k``
    first".
    """
    _check_pair(F, Delta)
    mats = _parametrize(F, _mats(Delta), resolve(tol))
    return OperatorFrame.from_mats(F.ctx, mats)


def right_inverse_from_psi(F: OperatorFrame, Psi: SequenceOperator,
                           tol: Tolerances | None = None) -> SequenceOperator:
    """Right inverse ``theta S^{-1} + (I - theta S^{-1} theta*) psi`` of ``theta*``."""
    _check_pair(F, Psi)
    mats = _parametrize(F, _mats(Psi), resolve(tol))
    return SequenceOperator.from_mats(F.ctx, mats)


def dual_from_right_inverse(F: OperatorFrame, eta_prime: SequenceOperator,
                            tol: Tolerances | None = None) -> OperatorFrame:
    """The dual ``{pi_i eta'}`` read off a right inverse of ``theta*``."""
    tol = resolve(tol)
    _check_pair(F, eta_prime)
    nk = F.ctx.flat_dim
    defect = float(np.linalg.norm(synthesis_product(F, eta_prime) - np.eye(nk)))
    if defect > tol.eq * nk:
        raise NotARightInverse(f"||theta* eta' - I||_F = {defect:.3e} exceeds {tol.eq * nk:.1e}")
    return OperatorFrame(F.ctx, eta_prime.rows)


def dual_frame_operator_identity(F: OperatorFrame, D: OperatorFrame,
                                 tol: Tolerances | None = None) -> tuple[float, float]:
    """Compare ``S_Omega`` with ``S^{-1} + eta*(I - theta S^{-1} theta*) eta``.

    Returns the absolute and relative Frobenius distance between the two
    sides.
    """
    tol = resolve(tol)
    _check_pair(F, D)
    nk = F.ctx.flat_dim
    pair_defect = float(np.linalg.norm(synthesis_product(F, D) - np.eye(nk)))
    if pair_defect > tol.eq * nk:
        raise NotADualPair(f"duality residual {pair_defect:.3e} exceeds {tol.eq * nk:.1e}")
    g_inv = _require_frame(F, tol)
    theta, eta = analysis(F).block, analysis(D).block
    projector = np.eye(theta.shape[1]) - theta.conj().T @ g_inv @ theta
    rhs = g_inv + eta @ projector @ eta.conj().T
    lhs = D.gram.mat
    diff = float(np.linalg.norm(lhs - rhs))
    return diff, diff / float(np.linalg.norm(lhs))


def vector_dual(fs, hs, tol: Tolerances | None = None) -> list[AlgebraElement]:
    """Dual vectors ``g_j = S^{-1} f_j + h_j - sum_k <S^{-1} f_j, f_k> h_k``.

    Works entirely on the vector side: ``S f = sum_j <f, f_j> f_j`` is right
    multiplication by ``sum_j f_j^H f_j``, so ``S^{-1} f = f G^{-1}``.
    """
    tol = resolve(tol)
    fs = [f if isinstance(f, AlgebraElement) else AlgebraElement(f) for f in fs]
    hs = [h if isinstance(h, AlgebraElement) else AlgebraElement(h) for h in hs]
    if len(fs) != len(hs):
        raise LengthMismatch(f"{len(fs)} frame vectors vs {len(hs)} Bessel vectors")
    frame = vector_frame(fs)
    if any(h.dim != frame.ctx.algebra_dim for h in hs):
        raise ContextMismatch("Bessel vectors have the wrong dimension")
    if not is_frame(frame, tol):
        raise NotAFrame("vectors do not form a frame")
    g_inv = AlgebraElement(np.linalg.inv(vector_frame_operator(fs)))

    ctx = frame.ctx

    def vec(a):
        return ModuleVector(ctx, a.entries)

    out = []
    for fj, hj in zip(fs, hs):
        sinv_fj = fj @ g_inv
        g = sinv_fj + hj
        for fk, hk in zip(fs, hs):
            g = g - inner_product(vec(sinv_fj), vec(fk)) @ hk
        out.append(g)
    return out
