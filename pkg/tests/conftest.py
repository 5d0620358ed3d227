import numpy as np
import pytest


def make_phantom(size=256):
    """Frozen piecewise-smooth test scene with an oscillatory texture patch.

    Contains a smooth intensity ramp, two disks (one carrying a high-frequency
    cosine), a rectangle with an internal gradient, and a sinusoidal texture
    patch. Values are integral and stay in [15, 240] so the noise mask never
    misfires on clean pixels.
    """
    coords = np.arange(size) / (size - 1)
    yy, xx = np.meshgrid(coords, coords, indexing="ij")
    img = 90.0 + 60.0 * xx + 30.0 * yy
    disk = (yy - 0.30) ** 2 + (xx - 0.32) ** 2 <= 0.18**2
    img[disk] = 205.0
    rect = (yy >= 0.55) & (yy <= 0.85) & (xx >= 0.12) & (xx <= 0.42)
    img[rect] = 55.0 + 40.0 * ((xx[rect] - 0.12) / 0.30)
    patch = (yy >= 0.15) & (yy <= 0.50) & (xx >= 0.58) & (xx <= 0.93)
    img[patch] += 28.0 * np.sin(2 * np.pi * 47 * xx[patch]) * np.sin(2 * np.pi * 47 * yy[patch])
    disk2 = (yy - 0.72) ** 2 + (xx - 0.72) ** 2 <= 0.10**2
    img[disk2] = 140.0 + 50.0 * np.cos(2 * np.pi * 18 * (xx[disk2] + yy[disk2]))
    return np.clip(np.rint(img), 15.0, 240.0)


@pytest.fixture(scope="session")
def phantom():
    return make_phantom()


@pytest.fixture(scope="session")
def phantom_small():
    return make_phantom(64)
