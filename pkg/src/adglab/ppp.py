"""Analytic and semi-analytic baselines for the Poisson reference network.

The Rayleigh/no-noise success probability of the Poisson network has a
known quadrature form (and a closed form at alpha = 4, kept in the test
suite as an independent oracle). The general kappa of the Poisson network
mixes an exact contact-distance density with a Monte Carlo interference
expectation. Curve inversion lives here too since the deployment gain is
defined through the inverse success curves.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy import integrate, optimize

from .errors import OutOfRange, QuadratureFailure
from .geometry import Window, distance_sq
from .propagation import FadingModel, PathLoss, gain_from_distance_sq, sample_fading, small_t_coefficient
from .stats import isotonic_nonincreasing


def _tail_series(c: float, u0: float) -> float:
    """int_u0^inf du/(1+u^c) for u0 >= 2, c > 1, by the alternating
    expansion sum_k (-1)^(k+1) u0^(1-kc)/(kc-1); converges geometrically
    with ratio u0^-c."""
    total = 0.0
    for k in range(1, 300):
        term = (-1.0) ** (k + 1) * u0 ** (1.0 - k * c) / (k * c - 1.0)
        total += term
        if abs(term) < 1e-17:
            return total
    raise QuadratureFailure(f"tail series did not converge for c={c}, u0={u0}")


def ppp_success_rayleigh(theta, alpha: float):
    """Success probability of the Poisson network, Rayleigh fading, no
    noise, singular path loss: (1 + theta^d * int_{theta^-d}^inf
    du/(1+u^(1/d)))^-1 with d = 2/alpha. Evaluated to 1e-9 by adaptive
    quadrature plus an exact series for the integrand tail."""
    if not alpha > 2:
        raise ValueError("alpha must be > 2")
    delta = 2.0 / alpha
    c = alpha / 2.0

    def one(tv: float) -> float:
        if tv <= 0:
            raise ValueError("theta must be > 0")
        lo = tv**-delta
        if lo >= 2.0:
            val = _tail_series(c, lo)
        else:
            head, _ = integrate.quad(
                lambda u: 1.0 / (1.0 + u**c), lo, 2.0, epsabs=1e-13, epsrel=1e-12, limit=200
            )
            val = head + _tail_series(c, 2.0)
        return 1.0 / (1.0 + tv**delta * val)

    theta = np.asarray(theta, dtype=float)
    out = np.vectorize(one)(theta)
    return out if out.ndim else float(out)


def kappa_ppp_rayleigh(alpha: float) -> float:
    """kappa of the Poisson network for Rayleigh fading and no noise:
    2/(alpha - 2); equals 1 at alpha = 4."""
    if not alpha > 2:
        raise ValueError("alpha must be > 2")
    return 2.0 / (alpha - 2.0)


def _kappa_ppp_chunk(args):
    lam, path_loss, fading, noise_w, window, seed, start, count, a, m = args
    wh = (window.width, window.height)
    out = np.empty(count)
    for idx in range(count):
        rng = np.random.default_rng((seed, start + idx))
        # contact distance from the exact density 2*lam*pi*r*exp(-lam*pi*r^2)
        r = math.sqrt(rng.exponential() / (lam * math.pi))
        n = rng.poisson(lam * window.area)
        pts = rng.random((n, 2)) * wh
        z = rng.random(2) * wh
        d2 = distance_sq(pts, z, window)
        d2 = d2[d2 > r * r]
        h = sample_fading(fading, rng, len(d2))
        i_r = float(h @ gain_from_distance_sq(path_loss, d2)) if len(d2) else 0.0
        g_r = float(gain_from_distance_sq(path_loss, np.asarray(r * r)))
        out[idx] = a * g_r ** (-m) * (i_r + noise_w) ** m
    return out


def kappa_ppp_general(
    lam: float,
    path_loss: PathLoss,
    fading: FadingModel,
    noise_w: float = 0.0,
    n: int = 100_000,
    window: Window | None = None,
    seed: int = 0,
    threads: int = 1,
):
    """kappa of the Poisson network for general fading/path loss/noise.

    Outer integral over the exact contact density, inner interference
    expectation by Monte Carlo on the same torus window the empirical
    estimators use. Returns (kappa, stderr); raises NoPolynomialDecay for
    pure log-normal shadowing.
    """
    coef = small_t_coefficient(fading)
    if window is None:
        window = Window(100.0, 100.0)
    chunk = 4096
    chunks = [
        (lam, path_loss, fading, noise_w, window, seed, s, min(chunk, n - s), coef.a, coef.m)
        for s in range(0, n, chunk)
    ]
    if threads > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_kappa_ppp_chunk, chunks))
    else:
        parts = [_kappa_ppp_chunk(c) for c in chunks]
    v = np.concatenate(parts)
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v)))


def _invert_fn(fn, p_t: float) -> float:
    lo, hi = -12.0 * math.log(10.0), 2.0 * math.log(10.0)  # theta in [1e-12, 1e2]
    f = lambda logt: fn(math.exp(logt)) - p_t
    flo, fhi = f(lo), f(hi)
    while fhi > 0 and hi < 14 * math.log(10.0):
        hi += 2 * math.log(10.0)
        fhi = f(hi)
    if flo < 0 or fhi > 0:
        raise OutOfRange(f"p_t={p_t} not bracketed by the analytic curve")
    return math.exp(optimize.brentq(f, lo, hi, xtol=1e-10, rtol=8.9e-16))


def invert_success(curve_or_fn, p_t: float) -> float:
    """theta at which the success curve crosses p_t.

    Analytic curves (callables theta -> probability) are inverted by root
    bracketing to 1e-9 relative tolerance. Empirical curves are first made
    monotone (isotonic regression) and then linearly interpolated in
    (log theta, p). Raises OutOfRange when p_t is outside the curve.
    """
    if not 0.0 < p_t < 1.0:
        raise OutOfRange(f"p_t must be in (0, 1), got {p_t}")
    if callable(curve_or_fn):
        return _invert_fn(curve_or_fn, p_t)
    curve = curve_or_fn
    p = isotonic_nonincreasing(np.asarray(curve.p_hat, dtype=float))
    logt = np.asarray(curve.theta_db, dtype=float) * (math.log(10.0) / 10.0)
    if p_t > p.max() or p_t < p.min():
        raise OutOfRange(
            f"p_t={p_t} outside the observed success range [{p.min():.6g}, {p.max():.6g}]"
        )
    # np.interp wants increasing x: reverse so p ascends with falling theta
    return math.exp(float(np.interp(p_t, p[::-1], logt[::-1])))
