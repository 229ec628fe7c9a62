"""Windowed 2-D geometry: rectangular observation window and its metric.

Points are plain ``(..., 2)`` float arrays of (x, y) coordinates in meters.
The default window topology is a flat torus, which removes edge bias from
nearest-neighbour and interference computations on a finite window; the
``plane-with-guard`` topology falls back to the Euclidean metric and leaves
guard-region bookkeeping to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyPattern

TOPOLOGIES = ("torus", "plane-with-guard")


@dataclass(frozen=True)
class Window:
    """Rectangular observation window [0, width) x [0, height)."""

    width: float
    height: float
    topology: str = "torus"

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError(f"window sides must be positive, got {self.width} x {self.height}")
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"topology must be one of {TOPOLOGIES}, got {self.topology!r}")

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def is_torus(self) -> bool:
        return self.topology == "torus"


def wrapped_deltas(p, q, window: Window):
    """Coordinate-wise separations between p and q under the window metric.

    On the torus each axis separation is reduced to the minimal image,
    min(|dx|, width - |dx|); this is equivalent to minimising over the nine
    translated copies of q. Accepts broadcasting inputs of shape (..., 2).
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    d = np.abs(p - q)
    if window.is_torus:
        d = np.minimum(d, np.asarray([window.width, window.height]) - d)
    return d


def distance_sq(p, q, window: Window):
    """Squared window distance; cheaper than torus_distance for argmin work."""
    d = wrapped_deltas(p, q, window)
    return d[..., 0] ** 2 + d[..., 1] ** 2


def torus_distance(p, q, window: Window):
    """Distance between p and q under the window metric (torus by default).

    Symmetric, never larger than the Euclidean distance, and at most
    sqrt(width^2 + height^2)/2 on the torus.
    """
    return np.sqrt(distance_sq(p, q, window))


def nearest_point(points: np.ndarray, z, window: Window, rng: np.random.Generator):
    """Index and distance of the point of ``points`` nearest to ``z``.

    Exact ties are broken uniformly at random from the caller's ``rng``
    stream. Raises EmptyPattern for an empty input.
    """
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        raise EmptyPattern("nearest_point requires a non-empty pattern")
    d2 = distance_sq(points, np.asarray(z, dtype=float), window)
    d2min = d2.min()
    ties = np.flatnonzero(d2 == d2min)
    idx = int(ties[0]) if ties.size == 1 else int(ties[rng.integers(ties.size)])
    return idx, float(np.sqrt(d2min))
