"""End-to-end NrMI scoring pipeline:

    crop -> rotate 90 CCW -> reshape back to original dims ->
    disjoint block pairs -> sample matrix -> center -> covariance ->
    regional mutual information -> variance weight -> product score.

Deterministic: identical image and config give bit-identical records.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gaussmath, image
from .errors import NrmiError, TooSmallError


@dataclass(frozen=True)
class NrmiConfig:
    r: int = 1
    eps_eig: float = 1e-9
    centering_mode: str = "per-dimension"

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"radius must be non-negative, got {self.r}")
        if self.eps_eig <= 0:
            raise ValueError(f"eps_eig must be positive, got {self.eps_eig}")
        if self.centering_mode not in ("per-dimension", "grand-mean"):
            raise ValueError(f"unknown centering mode {self.centering_mode!r}")

    @property
    def block(self) -> int:
        return 2 * self.r + 1


@dataclass(frozen=True)
class QualityRecord:
    m_rmi: float
    weight: float
    nrmi: float
    source: str
    effective_dims: tuple
    regularized: bool


@dataclass(frozen=True)
class ScoreFailure:
    source: str
    error: str


def variance_weight(img: image.GrayImage) -> float:
    """Population variance of all pixel intensities (single scalar)."""
    return float(np.var(img.pixels))


def score_image(img: image.GrayImage, cfg: NrmiConfig = NrmiConfig(),
                source: str = "") -> QualityRecord:
    block = cfg.block
    if img.rows < block or img.cols < block:
        raise TooSmallError(
            f"image {img.rows}x{img.cols} smaller than one {block}x{block} block"
        )
    cropped = image.crop_to_multiple(img, block)
    rotated = image.rotate90(cropped)
    realigned = image.reshape_to(rotated, cropped.rows, cropped.cols)
    pairs = image.partition_pairs(cropped, realigned, block)
    samples = gaussmath.build_sample_matrix(pairs)
    centered = gaussmath.center(samples, cfg.centering_mode)
    cov = gaussmath.covariance_summary(centered, cfg.eps_eig)
    m_rmi = gaussmath.regional_mutual_information(cov)
    weight = variance_weight(cropped)
    return QualityRecord(
        m_rmi=m_rmi,
        weight=weight,
        nrmi=m_rmi * weight,
        source=source,
        effective_dims=(cropped.rows, cropped.cols),
        regularized=cov.regularized,
    )


def score_sequence(imgs, cfg: NrmiConfig = NrmiConfig(), sources=None):
    """Score a batch, in order; per-image failures become ScoreFailure entries
    instead of aborting the batch."""
    if sources is None:
        sources = [str(i) for i in range(len(imgs))]
    out = []
    for img, src in zip(imgs, sources):
        try:
            out.append(score_image(img, cfg, source=src))
        except NrmiError as exc:
            out.append(ScoreFailure(source=src, error=str(exc)))
    return out
