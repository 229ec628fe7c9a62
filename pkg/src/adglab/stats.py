"""Small statistical helpers shared by the estimators."""

from __future__ import annotations

import numpy as np


def wilson_interval(successes, n: int, z: float = 1.959963984540054):
    """Wilson score interval for a binomial proportion.

    Valid near p = 1, which is exactly the high-reliability regime the
    success-probability estimates live in. Vectorised over ``successes``.
    """
    k = np.asarray(successes, dtype=float)
    p = k / n
    z2n = z * z / n
    denom = 1.0 + z2n
    center = (p + z2n / 2.0) / denom
    half = (z / denom) * np.sqrt(p * (1.0 - p) / n + z2n / (4.0 * n))
    return np.maximum(center - half, 0.0), np.minimum(center + half, 1.0)


def isotonic_nonincreasing(y: np.ndarray) -> np.ndarray:
    """Least-squares non-increasing fit of y (pool adjacent violators).

    Used to regularise Monte Carlo success curves before inversion so the
    inverse is single-valued.
    """
    # PAVA on the reversed sequence enforces non-decreasing, i.e. original
    # non-increasing.
    vals = list(y[::-1].astype(float))
    weights = [1.0] * len(vals)
    means: list[float] = []
    wsum: list[float] = []
    counts: list[int] = []
    for v, w in zip(vals, weights):
        means.append(v)
        wsum.append(w)
        counts.append(1)
        while len(means) > 1 and means[-2] > means[-1]:
            m2, w2, c2 = means.pop(), wsum.pop(), counts.pop()
            m1, w1, c1 = means.pop(), wsum.pop(), counts.pop()
            w = w1 + w2
            means.append((m1 * w1 + m2 * w2) / w)
            wsum.append(w)
            counts.append(c1 + c2)
    out = np.repeat(means, counts)[::-1]
    return out


def linear_fit(x: np.ndarray, y: np.ndarray):
    """Ordinary least-squares line fit; returns (slope, intercept, r2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xm, ym = x.mean(), y.mean()
    sxx = np.sum((x - xm) ** 2)
    sxy = np.sum((x - xm) * (y - ym))
    slope = sxy / sxx
    intercept = ym - slope * xm
    resid = y - (intercept + slope * x)
    syy = np.sum((y - ym) ** 2)
    r2 = 1.0 - np.sum(resid**2) / syy if syy > 0 else 1.0
    return float(slope), float(intercept), float(r2)
