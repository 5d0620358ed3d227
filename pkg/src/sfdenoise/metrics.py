"""Full-image quality metrics: PSNR, global SSIM, and GMSD.

All three operate on 2-D float arrays of any (matching) shape and make no
assumption about quantization; callers decide whether to round to 8 bits
first. The SSIM here is the single global statistic built from whole-image
means, variances, and covariance, not the windowed average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["MetricReport", "psnr", "ssim_global", "gmsd", "compare"]

# Stabilizer for the gradient-similarity ratio, sized for the [0, 255] range
# (0.0026 * 255**2, rounded).
GMSD_STABILIZER = 170.0


@dataclass(frozen=True)
class MetricReport:
    """PSNR in dB (math.inf for identical images), global SSIM, and GMSD."""

    psnr: float
    ssim: float
    gmsd: float


def _pair(reference, test, min_side=1):
    x = np.asarray(reference, dtype=float)
    y = np.asarray(test, dtype=float)
    if x.ndim != 2 or y.ndim != 2:
        raise ValueError("metrics expect 2-D images")
    if x.shape != y.shape:
        raise ValueError(f"image shapes differ: {x.shape} vs {y.shape}")
    if min(x.shape) < min_side:
        raise ValueError(f"image sides must be at least {min_side}, got {x.shape}")
    return x, y


def psnr(reference, test):
    """Peak signal-to-noise ratio in dB: 10*log10(max(reference)^2 / MSE).

    The mean squared error is averaged over all pixels. Identical images
    return math.inf. The reference must contain at least one positive value.
    """
    x, y = _pair(reference, test)
    peak = float(x.max())
    if peak <= 0.0:
        raise ValueError("reference image must contain a positive intensity")
    mse = float(np.mean((x - y) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def ssim_global(reference, test, k1=0.01, k2=0.03):
    """Single global structural-similarity statistic.

    Uses whole-image means, population variances, and covariance with the
    usual stabilizing constants (L*k1)^2 and (L*k2)^2, where L is the
    maximum gray value of the reference. Identical images score exactly 1;
    anticorrelated images can score below 0.
    """
    x, y = _pair(reference, test)
    mean_x = float(x.mean())
    mean_y = float(y.mean())
    dev_x = x - mean_x
    dev_y = y - mean_y
    var_x = float(np.mean(dev_x * dev_x))
    var_y = float(np.mean(dev_y * dev_y))
    cov = float(np.mean(dev_x * dev_y))
    level = float(x.max())
    c1 = (level * k1) ** 2
    c2 = (level * k2) ** 2
    return ((2.0 * mean_x * mean_y + c1) * (2.0 * cov + c2)) / (
        (mean_x * mean_x + mean_y * mean_y + c1) * (var_x + var_y + c2)
    )


def _gradient_magnitude(img):
    # 3x3 signed Prewitt kernels scaled by 1/3, periodic boundaries: the
    # horizontal component differences columns and averages three rows, the
    # vertical component is the transpose pattern.
    horiz_diff = np.roll(img, -1, axis=1) - np.roll(img, 1, axis=1)
    gx = (np.roll(horiz_diff, -1, axis=0) + horiz_diff + np.roll(horiz_diff, 1, axis=0)) / 3.0
    vert_diff = np.roll(img, -1, axis=0) - np.roll(img, 1, axis=0)
    gy = (np.roll(vert_diff, -1, axis=1) + vert_diff + np.roll(vert_diff, 1, axis=1)) / 3.0
    return np.hypot(gx, gy)


def gmsd(reference, test, c=GMSD_STABILIZER):
    """Gradient magnitude similarity deviation; 0 means identical gradients.

    Both gradient-magnitude maps come from signed Prewitt kernels; the
    per-pixel similarity (2*m_x*m_y + c) / (m_x^2 + m_y^2 + c) is summarized
    by its standard deviation over the image. Symmetric in its arguments.
    """
    x, y = _pair(reference, test, min_side=3)
    mag_x = _gradient_magnitude(x)
    mag_y = _gradient_magnitude(y)
    gms = (2.0 * mag_x * mag_y + c) / (mag_x * mag_x + mag_y * mag_y + c)
    return float(np.sqrt(np.mean((gms - gms.mean()) ** 2)))


def compare(reference, test, k1=0.01, k2=0.03, c=GMSD_STABILIZER):
    """Evaluate all three metrics at once."""
    return MetricReport(
        psnr=psnr(reference, test),
        ssim=ssim_global(reference, test, k1=k1, k2=k2),
        gmsd=gmsd(reference, test, c=c),
    )
