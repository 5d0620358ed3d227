"""Matrix-free conjugate gradients for the masked diagonal-plus-ridge systems.

The normal equations of both quadratic subproblems share the operator
A(x) = w_m * (mask * x) + w_r * x, which is symmetric positive definite for
any binary mask as long as the ridge weight w_r is positive. A closed-form
entrywise solution exists, but the solver is kept matrix-free so the same
code path serves any future symmetric positive definite operator; with a
binary mask the spectrum has at most two distinct eigenvalues and conjugate
gradients terminates in two updates anyway.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["RESIDUAL_TOL", "CgmConfig", "MaskedDiagOperator", "cgm_solve"]

# Relative-residual stop; stricter than the iterate-change tolerance and the
# accuracy the outer solver relies on.
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class CgmConfig:
    """Iteration cap and relative iterate-change tolerance."""

    max_iters: int = 100
    tol: float = 1e-4

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be a positive integer")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class MaskedDiagOperator:
    """Linear action x -> masked_weight * (mask * x) + ridge_weight * x."""

    mask: np.ndarray
    masked_weight: float
    ridge_weight: float

    def __post_init__(self):
        object.__setattr__(self, "mask", np.asarray(self.mask, dtype=float))
        if not self.masked_weight > 0.0:
            raise ValueError("masked_weight must be positive")
        if not self.ridge_weight > 0.0:
            raise ValueError("ridge_weight must be positive")

    def __call__(self, x):
        return self.masked_weight * (self.mask * x) + self.ridge_weight * x


def cgm_solve(operator, rhs, config=None, callback=None):
    """Solve A(x) = b by conjugate gradients from a zero initial guess.

    operator is any callable implementing a symmetric positive definite
    linear action on arrays shaped like rhs; inner products treat the
    unknowns as flattened vectors. Iteration stops when the relative
    residual ||A(x) - b|| / ||b|| reaches RESIDUAL_TOL, when the relative
    iterate change falls below config.tol, or after config.max_iters
    updates. A zero right-hand side returns zero immediately.

    callback, when given, is called after every update with (x, r); useful
    for inspecting convergence.
    """
    cfg = config if config is not None else CgmConfig()
    b = np.asarray(rhs, dtype=float)
    if not np.isfinite(b).all():
        raise ValueError("right-hand side must be finite")
    x = np.zeros_like(b)
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return x
    r = b.copy()
    p = r.copy()
    rs = float(np.vdot(r, r))
    for _ in range(cfg.max_iters):
        if math.sqrt(rs) <= RESIDUAL_TOL * b_norm:
            break
        if not np.any(p):
            break
        ap = operator(p)
        alpha = rs / float(np.vdot(p, ap))
        step = alpha * p
        x_prev_norm = float(np.linalg.norm(x))
        x = x + step
        r = r - alpha * ap
        rs_new = float(np.vdot(r, r))
        if not math.isfinite(rs_new) or not math.isfinite(alpha):
            raise ValueError("conjugate gradients produced non-finite values; system is ill-posed")
        if callback is not None:
            callback(x, r)
        if x_prev_norm > 0.0 and float(np.linalg.norm(step)) / x_prev_norm < cfg.tol:
            break
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x
