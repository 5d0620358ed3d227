"""Elementwise shrinkage used by the sparsity-penalized subproblem updates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ShrinkParams", "lp_shrink"]


@dataclass(frozen=True)
class ShrinkParams:
    """Shrinkage exponent and threshold scale.

    p in (0, 1] controls how sharply the mapping transitions from killing
    small entries to passing large ones (p = 1 is soft thresholding). tau is
    the ratio of the sparsity weight to the quadratic penalty weight; entries
    with magnitude at most tau map to zero. tau = 0 degenerates to the
    identity map.
    """

    p: float
    tau: float

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"shrinkage exponent p must lie in (0, 1], got {self.p}")
        if not self.tau >= 0.0:
            raise ValueError(f"shrinkage threshold tau must be nonnegative, got {self.tau}")


def lp_shrink(theta, params):
    """Apply p-shrinkage elementwise.

    Each entry t maps to max(|t| - tau**(2-p) * |t|**(p-1), 0) * sign(t).
    At p = 1 this is exactly soft thresholding with threshold tau. For p < 1
    the threshold term decays like |t|**(p-1), so large entries pass with
    vanishing bias while entries with |t| <= tau are zeroed outright. Zero
    maps to zero; the |t|**(p-1) singularity there is inert because the
    output is gated by sign(t).
    """
    arr = np.asarray(theta, dtype=float)
    if not np.isfinite(arr).all():
        raise ValueError("shrinkage input must be finite")
    magnitude = np.abs(arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        threshold = params.tau ** (2.0 - params.p) * magnitude ** (params.p - 1.0)
        shrunk = np.maximum(magnitude - threshold, 0.0)
    return np.where(magnitude > 0.0, shrunk * np.sign(arr), 0.0)
