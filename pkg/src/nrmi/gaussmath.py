"""Numerical core: sample-matrix assembly from block pairs, centering,
population covariance, Gaussian entropy via the covariance log-determinant,
and regional mutual information between the two halves of the sample space.

Entropies are in nats. The joint covariance over the stacked 2*(block^2)-dim
samples is split into its top-left / bottom-right marginal blocks, one per
image; mutual information is H(A) + H(B) - H(A,B), which reduces to
half the log-determinant gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, EmptyInputError, ShapeError

SYMMETRY_ATOL = 1e-9


@dataclass(frozen=True)
class SampleMatrix:
    """d x n_samples matrix; one column per block pair, first half of each
    column from the original image's block, second half from the rotated one."""

    data: np.ndarray

    @property
    def d(self) -> int:
        return self.data.shape[0]

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class CovarianceSummary:
    c: np.ndarray
    log_det_joint: float
    log_det_a: float
    log_det_b: float
    regularized: bool


def block_dim(r: int) -> int:
    """Sample dimensionality for neighborhood radius r: 2*(2r+1)^2."""
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    return 2 * (2 * r + 1) ** 2


def build_sample_matrix(pairs) -> SampleMatrix:
    """Stack each block pair as one column: 9 row-major values of the original
    block followed by 9 row-major values of the rotated-reshaped block
    (2*k^2 for general block size k)."""
    if not pairs:
        raise EmptyInputError("cannot build a sample matrix from zero block pairs")
    cols = [np.concatenate([p.a.ravel(), p.b.ravel()]) for p in pairs]
    return SampleMatrix(np.column_stack(cols))


def center(m: SampleMatrix, mode: str = "per-dimension") -> SampleMatrix:
    """Subtract the mean: per dimension across samples (default), or the
    single grand mean of all entries ("grand-mean", fidelity switch)."""
    if mode == "per-dimension":
        mean = m.data.mean(axis=1, keepdims=True)
    elif mode == "grand-mean":
        mean = m.data.mean()
    else:
        raise ValueError(f"unknown centering mode {mode!r}")
    return SampleMatrix(m.data - mean)


def covariance(m0: SampleMatrix) -> np.ndarray:
    """Population covariance C = (1/N) M0 M0^T (divisor N, not N-1)."""
    c = m0.data @ m0.data.T / m0.n_samples
    # exact symmetry guards the eigensolver against round-off skew
    return (c + c.T) / 2.0


def log_det_psd(m: np.ndarray, eps_eig: float = 1e-9):
    """Sum of log eigenvalues with clamping at eps_eig.

    Returns (log_det, regularized); regularized is True iff any eigenvalue
    fell below eps_eig. Always finite.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if not np.allclose(m, m.T, atol=SYMMETRY_ATOL, rtol=0.0):
        raise ShapeError(f"matrix not symmetric within {SYMMETRY_ATOL}")
    eigs = np.linalg.eigvalsh(m)
    regularized = bool(np.any(eigs < eps_eig))
    return float(np.sum(np.log(np.maximum(eigs, eps_eig)))), regularized


def gaussian_entropy(log_det: float, d: int) -> float:
    """Differential entropy of a d-dim Gaussian with the given covariance
    log-determinant: (d/2) ln(2*pi*e) + (1/2) log_det, in nats."""
    return 0.5 * d * math.log(2.0 * math.pi * math.e) + 0.5 * log_det


def covariance_summary(m0: SampleMatrix, eps_eig: float = 1e-9) -> CovarianceSummary:
    """Covariance of a centered sample matrix plus the three log-determinants
    (joint, top-left marginal, bottom-right marginal)."""
    c = covariance(m0)
    d = c.shape[0]
    if d % 2:
        raise DimensionError(f"joint dimensionality must be even, got {d}")
    h = d // 2
    ld_joint, reg_j = log_det_psd(c, eps_eig)
    ld_a, reg_a = log_det_psd(c[:h, :h], eps_eig)
    ld_b, reg_b = log_det_psd(c[h:, h:], eps_eig)
    return CovarianceSummary(c, ld_joint, ld_a, ld_b, reg_j or reg_a or reg_b)


def regional_mutual_information(cov: CovarianceSummary) -> float:
    """H(C_A) + H(C_B) - H(C); the 2*pi*e terms cancel, leaving
    half of (log det C_A + log det C_B - log det C)."""
    d = cov.c.shape[0]
    if d % 2:
        raise DimensionError(f"joint dimensionality must be even, got {d}")
    h = d // 2
    return (
        gaussian_entropy(cov.log_det_a, h)
        + gaussian_entropy(cov.log_det_b, h)
        - gaussian_entropy(cov.log_det_joint, d)
    )
