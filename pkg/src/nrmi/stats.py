"""Correlation measures for objective evaluation: Pearson product-moment
(linearity) and Spearman rank correlation with average-rank tie handling
(monotonicity)."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateVarianceError, DimensionError


def _as_paired(xs, ys):
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.ndim != 1 or ys.ndim != 1 or xs.size != ys.size:
        raise DimensionError(
            f"paired samples need equal-length 1-D vectors, got {xs.shape} and {ys.shape}"
        )
    if xs.size < 3:
        raise DimensionError(f"need at least 3 pairs, got {xs.size}")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise DimensionError("samples must be finite")
    return xs, ys


def pearson(xs, ys) -> float:
    """Product-moment correlation; raises on a constant input vector."""
    xs, ys = _as_paired(xs, ys)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sx = float(np.sqrt(np.sum(dx * dx)))
    sy = float(np.sqrt(np.sum(dy * dy)))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateVarianceError("correlation undefined for a constant vector")
    return float(np.sum(dx * dy)) / (sx * sy)


def average_ranks(values) -> np.ndarray:
    """1-based fractional ranks; ties receive the mean of the ranks they span.

    Stable sort on value with index tiebreak, so ranking is deterministic.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    order = np.argsort(values, kind="stable")
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(xs, ys) -> float:
    """Pearson correlation of fractional ranks; equals the 1 - 6*sum(d^2)/(n(n^2-1))
    closed form when no ties exist."""
    xs, ys = _as_paired(xs, ys)
    return pearson(average_ranks(xs), average_ranks(ys))
