"""Deployment gain, asymptotic deployment gain and downstream metrics.

The deployment gain at target probability p_t is the ratio of thresholds
at which two success curves cross p_t; its limit for p_t -> 1 (the ADG)
is estimated either from the kappa ratio (kappa_ppp / kappa)^(1/m) or as
the median horizontal shift over a high-reliability probability window.
The ADG in turn yields cheap approximations of the average ergodic rate
and of the mean SINR relative to the Poisson baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import InsufficientPoints, SingularMeanDiverges
from .point_process import intensity_of
from .ppp import invert_success, kappa_ppp_general, kappa_ppp_rayleigh, ppp_success_rayleigh
from .propagation import Nakagami, small_t_coefficient
from .sinr import Scenario, SuccessCurve, draw_batch, estimate_kappa
from .stats import linear_fit


@dataclass(frozen=True)
class AdgEstimate:
    """Asymptotic deployment gain as a linear ratio (dB only at the CLI)."""

    g_hat: float
    method: str  # "kappa_ratio" or "horizontal_shift"
    stderr: float
    kappa: float | None = None
    kappa_ppp: float | None = None
    m: float | None = None


def deployment_gain(curve, ref, p_t: float) -> float:
    """Threshold ratio curve^-1(p_t) / ref^-1(p_t), as a linear factor.

    Both arguments may be empirical SuccessCurve objects or callables
    theta -> probability.
    """
    return invert_success(curve, p_t) / invert_success(ref, p_t)


def adg_from_kappa(
    scenario: Scenario,
    n: int = 100_000,
    ref_lambda: float | None = None,
    ppp_n: int | None = None,
    probes_per_pattern: int = 1,
    threads: int = 1,
) -> AdgEstimate:
    """ADG from the kappa ratio (kappa_ppp / kappa)^(1/m).

    kappa comes from Monte Carlo on the scenario; kappa_ppp from the
    Poisson reference at the same intensity, same fading/path loss/noise.
    For Rayleigh fading, no noise and singular path loss the reference is
    the exact closed form 2/(alpha-2); otherwise it is estimated on the
    same window (stderr combined by the delta method).
    """
    coef = small_t_coefficient(scenario.fading)
    kappa, se = estimate_kappa(scenario, n, probes_per_pattern, threads)
    lam = ref_lambda if ref_lambda is not None else intensity_of(scenario.process)
    exact_ref = (
        isinstance(scenario.fading, Nakagami)
        and scenario.fading.m == 1.0
        and scenario.noise_w == 0.0
        and scenario.path_loss.is_singular
    )
    if exact_ref:
        kappa_ppp, se_ppp = kappa_ppp_rayleigh(scenario.path_loss.alpha), 0.0
    else:
        kappa_ppp, se_ppp = kappa_ppp_general(
            lam,
            scenario.path_loss,
            scenario.fading,
            scenario.noise_w,
            n=ppp_n if ppp_n is not None else n,
            window=scenario.window,
            seed=scenario.seed + 1,
            threads=threads,
        )
    g = (kappa_ppp / kappa) ** (1.0 / coef.m)
    rel_var = (se / kappa) ** 2 + (se_ppp / kappa_ppp) ** 2
    stderr = g * math.sqrt(rel_var) / coef.m
    return AdgEstimate(
        g_hat=float(g),
        method="kappa_ratio",
        stderr=float(stderr),
        kappa=float(kappa),
        kappa_ppp=float(kappa_ppp),
        m=float(coef.m),
    )


def adg_horizontal_shift(
    curve: SuccessCurve,
    ref,
    p_window: tuple = (0.99, 0.9999),
    n_points: int = 9,
) -> AdgEstimate:
    """ADG as the median horizontal shift over a high-reliability window.

    Evaluates the deployment gain at probabilities log-spaced (in outage)
    across ``p_window`` and reports the median, with the spread of the
    window values as stderr. Raises OutOfRange when either curve does not
    reach the window (raise n in that case).
    """
    lo, hi = p_window
    if not (0.9 < lo < hi < 1.0):
        raise ValueError("p_window must satisfy 0.9 < lo < hi < 1")
    outages = np.geomspace(1.0 - lo, 1.0 - hi, n_points)
    gains = np.asarray([deployment_gain(curve, ref, 1.0 - q) for q in outages])
    g = float(np.median(gains))
    stderr = float(gains.std(ddof=1)) if n_points > 1 else 0.0
    return AdgEstimate(g_hat=g, method="horizontal_shift", stderr=stderr)


def outage_slope(curve: SuccessCurve, theta_db_range: tuple) -> float:
    """Least-squares slope of the outage tail in dB per decade of theta.

    Fits 10*log10(1 - p_hat) against theta_db over the given range, using
    only grid points whose outage confidence interval excludes zero.
    """
    lo, hi = theta_db_range
    t = np.asarray(curve.theta_db, dtype=float)
    outage = 1.0 - np.asarray(curve.p_hat, dtype=float)
    usable = (t >= lo) & (t <= hi) & (outage > 0) & (np.asarray(curve.ci_hi) < 1.0)
    if usable.sum() < 5:
        raise InsufficientPoints(
            f"only {int(usable.sum())} usable grid points in [{lo}, {hi}] dB"
        )
    slope_per_db, _, _ = linear_fit(t[usable], 10.0 * np.log10(outage[usable]))
    return 10.0 * slope_per_db


def ergodic_rate_mc(
    scenario: Scenario,
    n: int = 100_000,
    probes_per_pattern: int = 1,
    threads: int = 1,
):
    """Average ergodic rate E[ln(1 + SINR)] in nats, with stderr."""
    batch = draw_batch(scenario, n, probes_per_pattern, threads)
    v = np.log1p(batch.sinr)
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v)))


def ergodic_rate_from_adg(g_hat: float, alpha: float) -> float:
    """ADG approximation of the rate: integral of the shifted analytic
    Poisson success curve, int_0^inf P_c^PPP((e^x - 1)/g) dx (Rayleigh,
    no-noise baseline)."""
    if not g_hat > 0:
        raise ValueError("g_hat must be > 0")

    def integrand(x: float) -> float:
        if x > 700.0:  # success is zero to double precision far out
            return 0.0
        theta = math.expm1(x) / g_hat
        if theta < 1e-300:
            return 1.0
        return ppp_success_rayleigh(theta, alpha)

    val, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-10, epsrel=1e-6, limit=200)
    return float(val)


def mean_sinr_mc(
    scenario: Scenario,
    n: int = 100_000,
    probes_per_pattern: int = 1,
    threads: int = 1,
):
    """Mean SINR with stderr; defined only for the non-singular path loss
    (the singular model has an infinite mean and raises)."""
    if scenario.path_loss.is_singular:
        raise SingularMeanDiverges(
            "mean SINR is infinite under the singular path loss model"
        )
    batch = draw_batch(scenario, n, probes_per_pattern, threads)
    return float(batch.sinr.mean()), float(batch.sinr.std(ddof=1) / math.sqrt(batch.n))


def adg_table_to_csv(rows, path) -> None:
    """Write ADG estimates as CSV.

    ``rows`` holds (process_label, fading_label, alpha, AdgEstimate)
    tuples; the gain is also emitted in dB here at the output boundary.
    """
    def fmt(v):
        return "" if v is None else repr(float(v))

    with open(path, "w", newline="") as f:
        f.write("process,fading,alpha,method,g_hat,g_hat_db,stderr,kappa,kappa_ppp\n")
        for process, fading, alpha, est in rows:
            g_db = 10.0 * math.log10(est.g_hat)
            f.write(
                f"{process},{fading},{alpha!r},{est.method},{est.g_hat!r},{g_db!r},"
                f"{est.stderr!r},{fmt(est.kappa)},{fmt(est.kappa_ppp)}\n"
            )
