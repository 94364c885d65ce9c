import numpy as np
import pytest

from nrmi.image import GrayImage


def make_gradient(rows=120, cols=160):
    y, x = np.mgrid[0:rows, 0:cols]
    arr = 255.0 * (x / (cols - 1)) * (0.5 + 0.5 * np.sin(2 * np.pi * y / 60))
    return GrayImage(np.clip(arr, 0, 255))


def make_blobs(rows=120, cols=160, seed=42, count=25):
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:rows, 0:cols]
    arr = np.zeros((rows, cols))
    for _ in range(count):
        cy, cx = rng.uniform(0, rows), rng.uniform(0, cols)
        amp, s = rng.uniform(50, 255), rng.uniform(8, 30)
        arr += amp * np.exp(-((yy - cy) ** 2 + (xx - cx) ** 2) / (2 * s * s))
    return GrayImage(np.clip(arr, 0, 255))


def make_edges(rows=120, cols=160):
    y, x = np.mgrid[0:rows, 0:cols]
    arr = 255.0 * ((x // 20 + y // 20) % 2) * 0.8 + 20 * np.sin(x / 5.0)
    return GrayImage(np.clip(arr, 0, 255))


@pytest.fixture
def gradient_image():
    return make_gradient()


@pytest.fixture
def structured_images():
    """Three deterministic high-variance images with strong spatial structure."""
    return [make_gradient(), make_blobs(), make_edges()]


def pgm_p2(values, rows, cols, maxval=255):
    body = " ".join(str(int(v)) for v in values)
    return f"P2\n{cols} {rows}\n{maxval}\n{body}\n".encode("ascii")
