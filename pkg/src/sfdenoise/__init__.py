"""Salt-and-pepper image denoising via cartoon/texture decomposition.

The observed image is modeled as cartoon + texture + impulse noise. Noise
locations are detected from their extreme amplitudes and excluded from the
data fidelity through a binary mask; both image parts are regularized by
sparsity of their stationary framelet coefficients under a p-power penalty
and recovered by an alternating-direction splitting scheme.
"""

from .image import (
    NoiseSpec,
    PgmFormatError,
    add_salt_pepper_noise,
    build_mask,
    read_pgm,
    salt_pepper_pattern,
    write_pgm,
)
from .linsolve import CgmConfig, MaskedDiagOperator, cgm_solve
from .metrics import MetricReport, compare, gmsd, psnr, ssim_global
from .shrinkage import ShrinkParams, lp_shrink
from .solver import (
    MODE_MCA,
    MODE_NO_MASK,
    MODE_SINGLE,
    DenoiseResult,
    IterationRecord,
    SolverConfig,
    SolverDivergedError,
    SolverState,
    denoise,
    dual_ascent,
    update_cartoon,
    update_coeff_aux,
    update_noise_aux,
    update_texture,
    write_trace_csv,
)
from .transforms import (
    FRAMELET_BANK,
    HAAR_LABELS,
    SFT_LABELS,
    FilterBank,
    SubbandSet,
    haar_forward,
    haar_inverse,
    sft_forward,
    sft_inverse,
)

__version__ = "0.1.0"

__all__ = [
    "NoiseSpec",
    "PgmFormatError",
    "add_salt_pepper_noise",
    "build_mask",
    "read_pgm",
    "salt_pepper_pattern",
    "write_pgm",
    "CgmConfig",
    "MaskedDiagOperator",
    "cgm_solve",
    "MetricReport",
    "compare",
    "gmsd",
    "psnr",
    "ssim_global",
    "ShrinkParams",
    "lp_shrink",
    "MODE_MCA",
    "MODE_NO_MASK",
    "MODE_SINGLE",
    "DenoiseResult",
    "IterationRecord",
    "SolverConfig",
    "SolverDivergedError",
    "SolverState",
    "denoise",
    "dual_ascent",
    "update_cartoon",
    "update_coeff_aux",
    "update_noise_aux",
    "update_texture",
    "write_trace_csv",
    "FRAMELET_BANK",
    "HAAR_LABELS",
    "SFT_LABELS",
    "FilterBank",
    "SubbandSet",
    "haar_forward",
    "haar_inverse",
    "sft_forward",
    "sft_inverse",
    "__version__",
]
