"""Seeded synthetic distortions for validating the metric's degradation
behavior without external databases.

Randomness comes from an explicit splitmix64 stream so outputs are
bit-reproducible across platforms:

    state_i = (seed + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64
    z = state_i; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9 (mod 2^64)
    z ^= z >> 27; z *= 0x94D049BB133111EB (mod 2^64); z ^= z >> 31

Uniforms are (z + 1) / (2^64 + 1) in (0, 1); Gaussian variates come from the
Box-Muller transform on consecutive uniform pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import uniform_filter

from .errors import ConfigError
from .image import GrayImage

KINDS = ("gaussian-noise", "box-blur", "blockiness")

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class DistortionSpec:
    kind: str
    level: float
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown distortion kind {self.kind!r}; choose from {KINDS}")
        if self.level < 0:
            raise ConfigError(f"distortion level must be non-negative, got {self.level}")


def _mix64(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64)
    z ^= z >> np.uint64(30)
    z *= _MIX1
    z ^= z >> np.uint64(27)
    z *= _MIX2
    z ^= z >> np.uint64(31)
    return z


def splitmix64(seed: int, count: int) -> np.ndarray:
    """Counter-based splitmix64 stream of `count` 64-bit words."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _GAMMA)


def uniform_open01(seed: int, count: int) -> np.ndarray:
    """Uniforms strictly inside (0, 1)."""
    words = splitmix64(seed, count)
    return (words.astype(np.float64) + 1.0) / 18446744073709551617.0


def gaussian_variates(seed: int, count: int) -> np.ndarray:
    """Standard normals via Box-Muller on consecutive uniform pairs."""
    pairs = (count + 1) // 2
    u = uniform_open01(seed, 2 * pairs).reshape(2, pairs)
    radius = np.sqrt(-2.0 * np.log(u[0]))
    angle = 2.0 * np.pi * u[1]
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])
    return z[:count]


def _blockiness(pixels: np.ndarray, k: int) -> np.ndarray:
    out = pixels.copy()
    rows, cols = pixels.shape
    for i in range(0, rows, k):
        for j in range(0, cols, k):
            tile = pixels[i : i + k, j : j + k]
            out[i : i + k, j : j + k] = tile.mean()
    return out


def apply_distortion(img: GrayImage, spec: DistortionSpec) -> GrayImage:
    """Apply one seeded distortion; level 0 is the identity for every kind."""
    if spec.level == 0:
        return img
    px = img.pixels
    if spec.kind == "gaussian-noise":
        noise = spec.level * gaussian_variates(spec.seed, px.size).reshape(px.shape)
        return GrayImage(np.clip(px + noise, 0.0, 255.0))
    if spec.kind == "box-blur":
        radius = int(spec.level)
        # mode="nearest" replicates edge pixels into the window
        return GrayImage(uniform_filter(px, size=2 * radius + 1, mode="nearest"))
    if spec.kind == "blockiness":
        k = int(spec.level)
        if k < 1:
            return img
        return GrayImage(_blockiness(px, k))
    raise ConfigError(f"unknown distortion kind {spec.kind!r}")


def sub_seed(seed: int, level: float) -> int:
    """Level-derived sub-seed: mix the base seed with the level's float bits."""
    bits = np.array([np.float64(level)]).view(np.uint64)
    with np.errstate(over="ignore"):
        level_word = _mix64(bits)[0]
        mixed = _mix64(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64) ^ level_word)
    return int(mixed[0])


def distortion_ladder(img: GrayImage, kind: str, levels, seed: int = 0) -> list:
    """One distorted image per level (strictly increasing, each with a
    level-derived sub-seed); order matches the levels."""
    levels = list(levels)
    for lo, hi in zip(levels, levels[1:]):
        if hi <= lo:
            raise ConfigError(f"levels must be strictly increasing, got {lo} then {hi}")
    if levels and levels[0] < 0:
        raise ConfigError(f"levels must be non-negative, got {levels[0]}")
    return [
        apply_distortion(img, DistortionSpec(kind, lv, sub_seed(seed, lv)))
        for lv in levels
    ]
