"""Base-station point process samplers and their closed-form oracles.

Four models: the homogeneous Poisson process, the Matérn cluster process
(Poisson parents, Poisson-count daughters uniform in a disk), the Matérn
hard-core process of type II (dependent thinning of a Poisson process by
uniform marks), and a randomly translated triangular lattice. All samplers
draw on the window rectangle and wrap constructions (cluster offsets,
hard-core neighbourhoods) around the torus so the realised intensity is
exact on the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial import cKDTree

from .errors import WindowTooSmall
from .geometry import Window, distance_sq


@dataclass(frozen=True)
class Poisson:
    """Homogeneous Poisson process of the given intensity (points/m^2)."""

    intensity: float

    def __post_init__(self):
        if not self.intensity > 0:
            raise ValueError("intensity must be > 0")


@dataclass(frozen=True)
class MaternCluster:
    """Matérn cluster process.

    Parents form a Poisson process of intensity ``parent_intensity``; each
    parent draws a Poisson(``mean_daughters``) number of daughters placed
    uniformly on the closed disk of radius ``cluster_radius`` around it.
    Only the daughters are emitted.
    """

    parent_intensity: float
    mean_daughters: float
    cluster_radius: float

    def __post_init__(self):
        if not (self.parent_intensity > 0 and self.mean_daughters > 0 and self.cluster_radius > 0):
            raise ValueError("all Matérn cluster parameters must be > 0")


@dataclass(frozen=True)
class MaternHardCore:
    """Matérn hard-core process of type II.

    A base Poisson process of intensity ``base_intensity`` is marked with
    i.i.d. Uniform[0,1] marks; a point survives iff no neighbour within
    ``hardcore_radius`` carries a strictly smaller mark. Mark ties (a
    null event) are broken by point index.
    """

    base_intensity: float
    hardcore_radius: float

    def __post_init__(self):
        if not (self.base_intensity > 0 and self.hardcore_radius > 0):
            raise ValueError("all hard-core parameters must be > 0")


@dataclass(frozen=True)
class TriangularLattice:
    """Triangular lattice of the given density, randomly translated.

    Lattice spacing is s = sqrt(2 / (sqrt(3) * intensity)). The translation
    is uniform over the fundamental cell; no random rotation is applied.
    """

    intensity: float

    def __post_init__(self):
        if not self.intensity > 0:
            raise ValueError("intensity must be > 0")

    @property
    def spacing(self) -> float:
        return float(np.sqrt(2.0 / (np.sqrt(3.0) * self.intensity)))

    @property
    def max_contact_distance(self) -> float:
        """Circumradius s/sqrt(3) of the lattice triangle: the contact
        distance from any location is bounded by this value."""
        return self.spacing / np.sqrt(3.0)


ProcessModel = Union[Poisson, MaternCluster, MaternHardCore, TriangularLattice]


@dataclass(frozen=True)
class PointPattern:
    """A realisation: (n, 2) coordinate array plus generating metadata."""

    points: np.ndarray
    window: Window
    model: ProcessModel
    seed: int | None = None

    def __len__(self) -> int:
        return len(self.points)


def intensity_of(model: ProcessModel) -> float:
    """Closed-form intensity of the model (points/m^2)."""
    if isinstance(model, (Poisson, TriangularLattice)):
        return float(model.intensity)
    if isinstance(model, MaternCluster):
        return float(model.parent_intensity * model.mean_daughters)
    if isinstance(model, MaternHardCore):
        v = np.pi * model.hardcore_radius**2
        return float(-np.expm1(-model.base_intensity * v) / v)
    raise TypeError(f"unknown process model {model!r}")


def interaction_radius(model: ProcessModel) -> float:
    """Radius of the model's dependence neighbourhood (0 for PPP/lattice)."""
    if isinstance(model, MaternCluster):
        return model.cluster_radius
    if isinstance(model, MaternHardCore):
        return model.hardcore_radius
    return 0.0


def _check_window(model: ProcessModel, window: Window) -> None:
    r = interaction_radius(model)
    if r > 0 and min(window.width, window.height) < 2 * r:
        raise WindowTooSmall(
            f"window {window.width} x {window.height} shorter than 2 x {r} per side"
        )


def _draw_poisson(lam: float, window: Window, rng: np.random.Generator) -> np.ndarray:
    n = rng.poisson(lam * window.area)
    return rng.random((n, 2)) * (window.width, window.height)


def _draw_matern_cluster(model: MaternCluster, window: Window, rng: np.random.Generator):
    parents = _draw_poisson(model.parent_intensity, window, rng)
    counts = rng.poisson(model.mean_daughters, len(parents))
    total = int(counts.sum())
    radius = model.cluster_radius * np.sqrt(rng.random(total))
    angle = 2 * np.pi * rng.random(total)
    pts = np.repeat(parents, counts, axis=0)
    pts[:, 0] += radius * np.cos(angle)
    pts[:, 1] += radius * np.sin(angle)
    pts[:, 0] %= window.width
    pts[:, 1] %= window.height
    return pts


def _draw_matern_hardcore(model: MaternHardCore, window: Window, rng: np.random.Generator):
    pts = _draw_poisson(model.base_intensity, window, rng)
    marks = rng.random(len(pts))
    if len(pts) < 2:
        return pts
    boxsize = (window.width, window.height) if window.is_torus else None
    tree = cKDTree(pts, boxsize=boxsize)
    pairs = tree.query_pairs(model.hardcore_radius, output_type="ndarray")
    flagged = np.zeros(len(pts), dtype=bool)
    if len(pairs):
        i, j = pairs[:, 0], pairs[:, 1]
        # query_pairs guarantees i < j, so equal marks flag the later index
        loser = np.where(marks[i] < marks[j], j, i)
        flagged[loser] = True
    return pts[~flagged]


def _draw_lattice(model: TriangularLattice, window: Window, rng: np.random.Generator):
    s = model.spacing
    row_h = s * np.sqrt(3.0) / 2.0
    u = rng.random() * s
    v = rng.random() * row_h
    rows = np.arange(int(np.ceil(window.height / row_h)) + 1)
    cols = np.arange(-1, int(np.ceil(window.width / s)) + 1)
    jj, ii = np.meshgrid(rows, cols, indexing="ij")
    x = (u + ii * s + (jj % 2) * (s / 2.0)).ravel()
    y = (v + jj * row_h).ravel()
    keep = (x >= 0) & (x < window.width) & (y < window.height)
    return np.column_stack((x[keep], y[keep]))


def draw_points(model: ProcessModel, window: Window, rng: np.random.Generator) -> np.ndarray:
    """One realisation as a raw (n, 2) array, consuming the given stream."""
    _check_window(model, window)
    if isinstance(model, Poisson):
        return _draw_poisson(model.intensity, window, rng)
    if isinstance(model, MaternCluster):
        return _draw_matern_cluster(model, window, rng)
    if isinstance(model, MaternHardCore):
        return _draw_matern_hardcore(model, window, rng)
    if isinstance(model, TriangularLattice):
        return _draw_lattice(model, window, rng)
    raise TypeError(f"unknown process model {model!r}")


def sample(model: ProcessModel, window: Window, seed: int) -> PointPattern:
    """Sample a reproducible pattern: identical (model, window, seed) give
    identical points."""
    rng = np.random.default_rng(seed)
    pts = draw_points(model, window, rng)
    pts.setflags(write=False)
    return PointPattern(points=pts, window=window, model=model, seed=seed)


def min_distance(points: np.ndarray, window: Window) -> float:
    """Smallest pairwise window distance (inf for fewer than two points)."""
    if len(points) < 2:
        return float("inf")
    boxsize = (window.width, window.height) if window.is_torus else None
    tree = cKDTree(points, boxsize=boxsize)
    d, _ = tree.query(points, k=2)
    return float(d[:, 1].min())


def sample_contact_distances(
    model: ProcessModel, window: Window, reps: int, seed: int
) -> np.ndarray:
    """Contact distances from a uniform probe to fresh realisations.

    Each replicate draws a new pattern and one probe location; the returned
    array holds the ``reps`` distances to the nearest point.
    """
    rng = np.random.default_rng(seed)
    wh = np.asarray([window.width, window.height])
    out = np.empty(reps)
    for k in range(reps):
        pts = draw_points(model, window, rng)
        z = rng.random(2) * wh
        out[k] = np.sqrt(distance_sq(pts, z, window).min()) if len(pts) else np.inf
    return out


def empirical_contact_ccdf(
    model: ProcessModel, window: Window, radii, reps: int, seed: int
) -> np.ndarray:
    """P(no point within radius x of a random location), estimated per x.

    ``radii`` must be sorted ascending; the result is monotone
    non-increasing because all radii share the same contact samples.
    """
    radii = np.asarray(radii, dtype=float)
    if np.any(np.diff(radii) < 0):
        raise ValueError("radii must be sorted ascending")
    xi = sample_contact_distances(model, window, reps, seed)
    return (xi[None, :] > radii[:, None]).mean(axis=1)


def ppp_contact_ccdf(lam: float, x) -> np.ndarray:
    """Void probability exp(-lam*pi*x^2) of the Poisson process; also the
    large-x asymptote of the hard-core contact CCDF at its own intensity."""
    x = np.asarray(x, dtype=float)
    return np.exp(-lam * np.pi * x**2)


def mcp_contact_ccdf_upper_bound(model: MaternCluster, x) -> np.ndarray:
    """Upper bound exp(-(1-exp(-cbar)) * lam_p * pi * (x - r_c)^2) on the
    cluster-process contact CCDF, valid for x > cluster radius."""
    x = np.asarray(x, dtype=float)
    gap = np.maximum(x - model.cluster_radius, 0.0)
    rate = -np.expm1(-model.mean_daughters) * model.parent_intensity
    return np.exp(-rate * np.pi * gap**2)


def pattern_to_csv(pattern: PointPattern, path) -> None:
    """Dump a pattern as CSV with header ``x,y``, one point per row."""
    with open(path, "w", newline="") as f:
        f.write("x,y\n")
        for x, y in pattern.points:
            f.write(f"{float(x)!r},{float(y)!r}\n")
