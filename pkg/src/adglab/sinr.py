"""Monte Carlo SINR kernel.

Each sample draws a fresh base-station pattern, probes one uniform
location, connects it to the nearest station and accumulates the
interference from all others with fresh i.i.d. fading per station. From
these samples the module estimates success curves, the asymptotic outage
coefficient kappa, conditional interference moments and interference
tails.

Reproducibility contract: replicate k of a scenario uses the generator
``np.random.default_rng((scenario.seed, k))`` and consumes it in a fixed
order (pattern, then per probe: location, tie break, fading). Replicates
are aggregated in fixed-size chunks whose boundaries do not depend on the
worker count, so results are bit-identical for any ``threads`` value.

``probes_per_pattern > 1`` reuses one pattern for several probe locations
(fading is still fresh per probe). That trades strict sample independence
for speed: estimates stay unbiased but confidence intervals are computed
as if samples were independent and therefore carry no coverage guarantee.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BinStarved, EmptyPattern
from .geometry import Window, distance_sq
from .point_process import ProcessModel, draw_points
from .propagation import (
    FadingModel,
    PathLoss,
    gain_from_distance_sq,
    sample_fading,
    small_t_coefficient,
)
from .stats import wilson_interval

# Replicates per work unit; fixed so that partial reductions (and hence
# floating-point results) do not depend on the thread count.
CHUNK_PATTERNS = 256


@dataclass(frozen=True)
class Scenario:
    """Everything needed to reproduce one experiment."""

    process: ProcessModel
    path_loss: PathLoss
    fading: FadingModel
    noise_w: float
    window: Window
    seed: int

    def __post_init__(self):
        if self.noise_w < 0:
            raise ValueError("noise_w must be >= 0")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


def noise_from_mean_snr_db(path_loss: PathLoss, snr_db: float) -> float:
    """Noise power W for a given mean SNR (received SNR at distance 1).

    The mean SNR is 1/(2W) under the non-singular law (gain 1/2 at d=1)
    and 1/W under the singular law (gain 1 at d=1).
    """
    snr = 10.0 ** (snr_db / 10.0)
    return 1.0 / (2.0 * snr) if not path_loss.is_singular else 1.0 / snr


@dataclass(frozen=True)
class SinrSample:
    xi: float
    h_serving: float
    interference: float
    sinr: float


@dataclass(frozen=True)
class SinrBatch:
    """Per-sample arrays from n Monte Carlo replicates."""

    xi: np.ndarray
    h_serving: np.ndarray
    interference: np.ndarray
    sinr: np.ndarray
    patterns: int
    probes_per_pattern: int

    @property
    def n(self) -> int:
        return len(self.sinr)


@dataclass(frozen=True)
class SuccessCurve:
    """P(SINR > theta) over a dB grid with 95% Wilson bounds."""

    theta_db: np.ndarray
    p_hat: np.ndarray
    ci_lo: np.ndarray
    ci_hi: np.ndarray
    n: int


def default_theta_db_grid() -> np.ndarray:
    """61 thresholds, -40 dB to +20 dB in 1 dB steps."""
    return np.arange(-40.0, 21.0, 1.0)


def _probe(points, path_loss, fading, noise_w, window, rng):
    """SINR at one uniform probe location of a given pattern."""
    if len(points) == 0:
        raise EmptyPattern("cannot probe an empty pattern")
    z = rng.random(2) * (window.width, window.height)
    d2 = distance_sq(points, z, window)
    d2min = d2.min()
    ties = np.flatnonzero(d2 == d2min)
    serve = int(ties[0]) if ties.size == 1 else int(ties[rng.integers(ties.size)])
    h = sample_fading(fading, rng, len(points))
    g = gain_from_distance_sq(path_loss, d2)
    signal = h[serve] * g[serve]
    interference = float(h @ g - signal)
    # float cancellation can leave a tiny negative residue
    interference = max(interference, 0.0)
    denom = noise_w + interference
    sinr = signal / denom if denom > 0 else math.inf
    return math.sqrt(d2min), float(h[serve]), interference, float(sinr)


def sinr_at(points, path_loss, fading, noise_w, window, rng) -> SinrSample:
    """One SINR sample on a caller-supplied pattern (injection point for
    degenerate patterns in tests)."""
    xi, h, i, s = _probe(np.asarray(points, dtype=float), path_loss, fading, noise_w, window, rng)
    return SinrSample(xi=xi, h_serving=h, interference=i, sinr=s)


def sample_sinr(scenario: Scenario, rng: np.random.Generator) -> SinrSample:
    """Draw one pattern and one SINR sample from it."""
    pts = draw_points(scenario.process, scenario.window, rng)
    return sinr_at(
        pts, scenario.path_loss, scenario.fading, scenario.noise_w, scenario.window, rng
    )


def _run_chunk(args):
    scenario, start, count, probes = args
    m = count * probes
    xi = np.empty(m)
    hs = np.empty(m)
    intf = np.empty(m)
    sinr = np.empty(m)
    pos = 0
    for k in range(start, start + count):
        rng = np.random.default_rng((scenario.seed, k))
        pts = draw_points(scenario.process, scenario.window, rng)
        for _ in range(probes):
            xi[pos], hs[pos], intf[pos], sinr[pos] = _probe(
                pts, scenario.path_loss, scenario.fading, scenario.noise_w, scenario.window, rng
            )
            pos += 1
    return xi, hs, intf, sinr


def draw_batch(
    scenario: Scenario,
    n: int,
    probes_per_pattern: int = 1,
    threads: int = 1,
) -> SinrBatch:
    """n (rounded up to a multiple of probes_per_pattern) SINR samples.

    Replicate streams are derived from (scenario.seed, pattern index), so
    the result is independent of ``threads``.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if probes_per_pattern < 1:
        raise ValueError("probes_per_pattern must be >= 1")
    patterns = -(-n // probes_per_pattern)
    chunks = [
        (scenario, s, min(CHUNK_PATTERNS, patterns - s), probes_per_pattern)
        for s in range(0, patterns, CHUNK_PATTERNS)
    ]
    if threads > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    else:
        parts = [_run_chunk(c) for c in chunks]
    xi, hs, intf, sinr = (np.concatenate([p[i] for p in parts]) for i in range(4))
    return SinrBatch(
        xi=xi,
        h_serving=hs,
        interference=intf,
        sinr=sinr,
        patterns=patterns,
        probes_per_pattern=probes_per_pattern,
    )


def curve_from_sinr(sinr_values: np.ndarray, theta_db: np.ndarray) -> SuccessCurve:
    """Success curve of a sample set over a shared threshold grid.

    Sharing samples across thresholds makes the estimate exactly monotone
    non-increasing in theta.
    """
    theta_db = np.asarray(theta_db, dtype=float)
    theta = 10.0 ** (theta_db / 10.0)
    n = len(sinr_values)
    s = np.sort(sinr_values)
    successes = n - np.searchsorted(s, theta, side="right")
    lo, hi = wilson_interval(successes, n)
    return SuccessCurve(
        theta_db=theta_db, p_hat=successes / n, ci_lo=lo, ci_hi=hi, n=n
    )


def estimate_success_curve(
    scenario: Scenario,
    theta_db=None,
    n: int = 100_000,
    probes_per_pattern: int = 1,
    threads: int = 1,
) -> SuccessCurve:
    """Monte Carlo success probabilities over a theta grid (dB)."""
    if theta_db is None:
        theta_db = default_theta_db_grid()
    batch = draw_batch(scenario, n, probes_per_pattern, threads)
    return curve_from_sinr(batch.sinr, theta_db)


def kappa_summand(batch: SinrBatch, scenario: Scenario) -> np.ndarray:
    """Per-sample values a * l(xi)^-m * (I + W)^m whose mean is kappa."""
    coef = small_t_coefficient(scenario.fading)
    g = gain_from_distance_sq(scenario.path_loss, batch.xi**2)
    return coef.a * g ** (-coef.m) * (batch.interference + scenario.noise_w) ** coef.m


def estimate_kappa(
    scenario: Scenario,
    n: int = 10_000,
    probes_per_pattern: int = 1,
    threads: int = 1,
):
    """Monte Carlo estimate of kappa = lim (1 - P_c(theta)) / theta^m.

    Returns (kappa, stderr). Requires fading with a polynomial CDF order
    at 0 (raises NoPolynomialDecay otherwise).
    """
    small_t_coefficient(scenario.fading)  # fail fast before sampling
    batch = draw_batch(scenario, n, probes_per_pattern, threads)
    v = kappa_summand(batch, scenario)
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v)))


def interference_moment(
    scenario: Scenario,
    order: int,
    xi_bin: tuple,
    reps: int,
    probes_per_pattern: int = 1,
    threads: int = 1,
) -> float:
    """Conditional moment E[I^order | xi in xi_bin] by rejection sampling.

    Raises BinStarved when fewer than 100 samples land in the bin.
    """
    if not 1 <= order <= 4:
        raise ValueError("order must be in 1..4")
    lo, hi = xi_bin
    batch = draw_batch(scenario, reps, probes_per_pattern, threads)
    sel = batch.interference[(batch.xi >= lo) & (batch.xi < hi)]
    if len(sel) < 100:
        raise BinStarved(f"only {len(sel)} samples with xi in [{lo}, {hi})")
    return float(np.mean(sel**order))


def interference_tail_ccdf(
    scenario: Scenario,
    levels,
    reps: int,
    probes_per_pattern: int = 1,
    threads: int = 1,
) -> np.ndarray:
    """Empirical P(I > level) on an ascending grid of levels."""
    levels = np.asarray(levels, dtype=float)
    if np.any(np.diff(levels) < 0):
        raise ValueError("levels must be sorted ascending")
    batch = draw_batch(scenario, reps, probes_per_pattern, threads)
    s = np.sort(batch.interference)
    return (len(s) - np.searchsorted(s, levels, side="right")) / len(s)


def curve_to_csv(curve: SuccessCurve, path) -> None:
    """Write a success curve as CSV: theta_db,p_hat,ci_lo,ci_hi,n."""
    with open(path, "w", newline="") as f:
        f.write("theta_db,p_hat,ci_lo,ci_hi,n\n")
        for t, p, lo, hi in zip(curve.theta_db, curve.p_hat, curve.ci_lo, curve.ci_hi):
            f.write(f"{float(t)!r},{float(p)!r},{float(lo)!r},{float(hi)!r},{curve.n}\n")
