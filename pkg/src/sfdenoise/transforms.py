"""Tight-frame framelet and Haar transforms for 2-D images.

The workhorse pair, :func:`sft_forward` / :func:`sft_inverse`, is a
stationary (undecimated) framelet transform: one low-pass and two high-pass
length-3 filters applied separably along columns and then rows, with
periodic boundaries and no downsampling. The result is nine coefficient
planes, each the size of the input. The analysis/synthesis filters form a
tight frame with frame constant 1, so the transform preserves energy and the
synthesis side is an exact left inverse. Periodic boundaries and centered
filters keep both identities exact and make every subband shift along with
the input.

A single-level decimated orthonormal Haar transform is included as an
alternative sparsifier; it produces four quarter-size planes and highlights
the artifacts that downsampling introduces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FilterBank",
    "FRAMELET_BANK",
    "SubbandSet",
    "SFT_LABELS",
    "HAAR_LABELS",
    "sft_forward",
    "sft_inverse",
    "haar_forward",
    "haar_inverse",
]

_SQRT2 = math.sqrt(2.0)

# Plane labels: first symbol is the filter applied along axis 0 (down the
# columns), second the filter applied along axis 1 (across the rows).
SFT_LABELS = ("LL", "H1L", "H2L", "LH1", "H1H1", "H2H1", "LH2", "H1H2", "H2H2")
HAAR_LABELS = ("LL", "LH", "HL", "HH")


@dataclass(frozen=True)
class FilterBank:
    """Analysis/synthesis taps of a three-channel filter pair.

    Each channel is a length-3 tap sequence centered at offsets (-1, 0, +1).
    For a tight frame with constant 1 the channelwise convolution of each
    analysis filter with its synthesis partner must sum to the unit impulse.
    """

    analysis: tuple[tuple[float, float, float], ...]
    synthesis: tuple[tuple[float, float, float], ...]


FRAMELET_BANK = FilterBank(
    analysis=(
        (0.25, 0.5, 0.25),
        (_SQRT2 / 4.0, 0.0, -_SQRT2 / 4.0),
        (-0.25, 0.5, -0.25),
    ),
    synthesis=(
        (0.25, 0.5, 0.25),
        (-_SQRT2 / 4.0, 0.0, _SQRT2 / 4.0),
        (-0.25, 0.5, -0.25),
    ),
)


@dataclass(frozen=True)
class SubbandSet:
    """A stack of equally sized coefficient planes with channel labels."""

    planes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        planes = np.asarray(self.planes, dtype=float)
        object.__setattr__(self, "planes", planes)
        object.__setattr__(self, "labels", tuple(self.labels))
        if planes.ndim != 3:
            raise ValueError(f"subband planes must be a 3-D stack, got ndim={planes.ndim}")
        if len(self.labels) != planes.shape[0]:
            raise ValueError(
                f"{len(self.labels)} labels for {planes.shape[0]} planes"
            )

    @property
    def shape(self):
        """Shape of a single plane."""
        return self.planes.shape[1:]

    def plane(self, label):
        try:
            return self.planes[self.labels.index(label)]
        except ValueError:
            raise KeyError(f"no subband labeled {label!r}") from None

    def _wrap(self, planes):
        return SubbandSet(planes, self.labels)

    def _check_compatible(self, other):
        if not isinstance(other, SubbandSet):
            return NotImplemented
        if self.labels != other.labels or self.planes.shape != other.planes.shape:
            raise ValueError("subband sets have mismatched labels or shapes")
        return other

    def __add__(self, other):
        other = self._check_compatible(other)
        if other is NotImplemented:
            return NotImplemented
        return self._wrap(self.planes + other.planes)

    def __sub__(self, other):
        other = self._check_compatible(other)
        if other is NotImplemented:
            return NotImplemented
        return self._wrap(self.planes - other.planes)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return self._wrap(self.planes * scalar)

    __rmul__ = __mul__


def _convolve3(x, taps, axis):
    """Periodic convolution with length-3 taps centered at offsets (-1, 0, +1)."""
    before, center, after = taps
    out = center * x
    if before != 0.0:
        out += before * np.roll(x, -1, axis=axis)
    if after != 0.0:
        out += after * np.roll(x, 1, axis=axis)
    return out


def _as_image(image, min_side):
    arr = np.asarray(image, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D image, got ndim={arr.ndim}")
    if min(arr.shape) < min_side:
        raise ValueError(f"image sides must be at least {min_side}, got {arr.shape}")
    return arr


def sft_forward(image):
    """Decompose an image into the nine stationary framelet planes.

    Columns are convolved with each analysis filter, then the rows of each
    intermediate with each filter again, all with periodic wrap-around. No
    decimation takes place, so every plane matches the input shape.
    """
    arr = _as_image(image, 3)
    bank = FRAMELET_BANK
    columns = [_convolve3(arr, taps, axis=0) for taps in bank.analysis]
    planes = np.empty((9,) + arr.shape)
    for s, row_taps in enumerate(bank.analysis):
        for f in range(3):
            planes[3 * s + f] = _convolve3(columns[f], row_taps, axis=1)
    return SubbandSet(planes, SFT_LABELS)


def sft_inverse(subbands):
    """Reconstruct an image from its nine framelet planes.

    Each plane is convolved with its matching synthesis filters (rows, then
    columns, periodic) and the contributions are summed. Exact left inverse
    of :func:`sft_forward`.
    """
    if subbands.labels != SFT_LABELS:
        raise ValueError(f"expected the 9 framelet planes {SFT_LABELS}, got {subbands.labels}")
    bank = FRAMELET_BANK
    out = np.zeros(subbands.shape)
    for s, row_taps in enumerate(bank.synthesis):
        for f, col_taps in enumerate(bank.synthesis):
            out += _convolve3(
                _convolve3(subbands.planes[3 * s + f], row_taps, axis=1), col_taps, axis=0
            )
    return out


def haar_forward(image):
    """One level of the decimated orthonormal Haar transform.

    Both image sides must be even. Returns four half-size planes; for a
    constant image of value c the LL plane is the constant 2c and the detail
    planes vanish.
    """
    arr = _as_image(image, 2)
    rows, cols = arr.shape
    if rows % 2 or cols % 2:
        raise ValueError(f"Haar transform requires even dimensions, got {rows}x{cols}")
    low = (arr[0::2, :] + arr[1::2, :]) / _SQRT2
    high = (arr[0::2, :] - arr[1::2, :]) / _SQRT2
    ll = (low[:, 0::2] + low[:, 1::2]) / _SQRT2
    lh = (low[:, 0::2] - low[:, 1::2]) / _SQRT2
    hl = (high[:, 0::2] + high[:, 1::2]) / _SQRT2
    hh = (high[:, 0::2] - high[:, 1::2]) / _SQRT2
    return SubbandSet(np.stack([ll, lh, hl, hh]), HAAR_LABELS)


def haar_inverse(subbands):
    """Invert :func:`haar_forward` exactly (orthonormal butterfly)."""
    if subbands.labels != HAAR_LABELS:
        raise ValueError(f"expected the 4 Haar planes {HAAR_LABELS}, got {subbands.labels}")
    ll, lh, hl, hh = subbands.planes
    half_rows, half_cols = ll.shape
    low = np.empty((half_rows, 2 * half_cols))
    high = np.empty_like(low)
    low[:, 0::2] = (ll + lh) / _SQRT2
    low[:, 1::2] = (ll - lh) / _SQRT2
    high[:, 0::2] = (hl + hh) / _SQRT2
    high[:, 1::2] = (hl - hh) / _SQRT2
    out = np.empty((2 * half_rows, 2 * half_cols))
    out[0::2, :] = (low + high) / _SQRT2
    out[1::2, :] = (low - high) / _SQRT2
    return out
