"""Grayscale image I/O, impulse-noise injection, and noise-mask construction.

Images are plain 2-D float64 arrays in gray-level units. Values read from or
written to 8-bit PGM files lie in [0, 255]; everything in between (solver
iterates, residuals) may hold any finite real value. Quantization to 8 bits
happens only at the file boundary, in :func:`write_pgm`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "PgmFormatError",
    "NoiseSpec",
    "read_pgm",
    "write_pgm",
    "salt_pepper_pattern",
    "add_salt_pepper_noise",
    "build_mask",
]


class PgmFormatError(ValueError):
    """Raised when a file is not a PGM this package can read (P2/P5, maxval 255)."""


def _require_gray_image(image, name="image"):
    arr = np.asarray(image, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 2-D array")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 255.0:
        raise ValueError(f"{name} intensities must lie in [0, 255]")
    return arr


def _header_tokens(data, count, start=0):
    """Read `count` whitespace-separated tokens, honoring '#' comments."""
    tokens = []
    i = start
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            newline = data.find(b"\n", i)
            i = n if newline < 0 else newline + 1
            continue
        if i >= n:
            raise PgmFormatError("malformed header: file ends before header is complete")
        j = i
        while j < n and not data[j : j + 1].isspace() and data[j] != ord("#"):
            j += 1
        tokens.append(data[i:j])
        i = j
    return tokens, i


def read_pgm(path):
    """Read a binary (P5) or ASCII (P2) PGM file with maxval 255.

    Returns a 2-D float64 array with values in [0, 255]. Missing files raise
    FileNotFoundError; format problems raise PgmFormatError with a message
    that distinguishes bad magic, malformed header fields, unsupported
    maxval, and truncated pixel data.
    """
    data = Path(path).read_bytes()
    (magic,), offset = _header_tokens(data, 1)
    if magic not in (b"P2", b"P5"):
        raise PgmFormatError(f"malformed header: unsupported magic {magic!r} (expected P2 or P5)")
    fields, offset = _header_tokens(data, 3, offset)
    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError:
        raise PgmFormatError("malformed header: width, height, and maxval must be integers") from None
    if width <= 0 or height <= 0:
        raise PgmFormatError(f"malformed header: non-positive dimensions {width}x{height}")
    if maxval != 255:
        raise PgmFormatError(f"unsupported maxval {maxval} (only 255 is supported)")

    if magic == b"P5":
        # Exactly one whitespace byte separates the maxval from the payload.
        if offset >= len(data) or not data[offset : offset + 1].isspace():
            raise PgmFormatError("malformed header: missing whitespace before binary pixel data")
        payload = data[offset + 1 : offset + 1 + width * height]
        if len(payload) < width * height:
            raise PgmFormatError(
                f"truncated pixel data: expected {width * height} bytes, found {len(payload)}"
            )
        pixels = np.frombuffer(payload, dtype=np.uint8).astype(float)
        return pixels.reshape(height, width)

    try:
        tokens, offset = _header_tokens(data, width * height, offset)
    except PgmFormatError:
        raise PgmFormatError("truncated pixel data: fewer ASCII samples than width*height") from None
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise PgmFormatError("malformed pixel data: non-integer ASCII sample") from None
    if any(v < 0 or v > maxval for v in values):
        raise PgmFormatError("malformed pixel data: sample outside [0, maxval]")
    rest = data[offset:]
    if rest.split(b"#")[0].strip():
        raise PgmFormatError("malformed pixel data: trailing samples after width*height values")
    return np.array(values, dtype=float).reshape(height, width)


def write_pgm(image, path):
    """Write a binary (P5) PGM with maxval 255.

    Intensities are rounded to the nearest integer, then clamped to [0, 255].
    Images that are already integral and in range survive a read/write
    round trip exactly.
    """
    arr = np.asarray(image, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("image must be a non-empty 2-D array")
    if not np.isfinite(arr).all():
        raise ValueError("image contains non-finite values")
    quantized = np.clip(np.rint(arr), 0.0, 255.0).astype(np.uint8)
    height, width = arr.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + quantized.tobytes())


@dataclass(frozen=True)
class NoiseSpec:
    """Parameters of the impulse-noise generator.

    level is the per-pixel corruption probability, salt_fraction the share of
    corrupted pixels that become 255 (the rest become 0), and seed feeds the
    PCG64 generator so the pattern is reproducible bit for bit.
    """

    level: float
    salt_fraction: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.level <= 1.0:
            raise ValueError(f"noise level must lie in [0, 1], got {self.level}")
        if not 0.0 <= self.salt_fraction <= 1.0:
            raise ValueError(f"salt fraction must lie in [0, 1], got {self.salt_fraction}")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


def salt_pepper_pattern(shape, spec):
    """Draw the corruption layout for :func:`add_salt_pepper_noise`.

    Returns two boolean arrays: which pixels are corrupted, and which of the
    corrupted pixels become salt (255). Two uniform draws are made per pixel
    from numpy's PCG64 generator seeded with spec.seed, so the pattern is
    identical across runs and platforms. Exposed so callers can count or
    locate the injected noise.
    """
    rng = np.random.default_rng(spec.seed)
    corrupted = rng.random(shape) < spec.level
    salt = rng.random(shape) < spec.salt_fraction
    return corrupted, salt


def add_salt_pepper_noise(image, spec):
    """Corrupt each pixel independently with probability spec.level.

    A corrupted pixel becomes 255 with probability spec.salt_fraction and 0
    otherwise; the remaining pixels are untouched.
    """
    arr = _require_gray_image(image)
    corrupted, salt = salt_pepper_pattern(arr.shape, spec)
    return np.where(corrupted, np.where(salt, 255.0, 0.0), arr)


def build_mask(observed):
    """Flag the pixels an impulse cannot have produced.

    The mask is 1.0 where the observed intensity is strictly between 0 and
    255 and 0.0 at the extremes, marking every candidate noise location.
    Clean pixels that genuinely are 0 or 255 are treated as noise too; with
    8-bit impulse noise the extremes are indistinguishable from corruption.
    """
    arr = _require_gray_image(observed, "observed")
    return ((arr > 0.0) & (arr < 255.0)).astype(float)
