"""Path-loss laws and fading distributions.

Path loss is either non-singular, l(d) = 1/(1 + d^alpha), or singular,
l(d) = d^-alpha, with alpha > 2. Fading powers are Nakagami-m (gamma with
unit mean; m = 1 is Rayleigh), log-normal shadowing 10^(X/10) with
X ~ N(0, sigma_db^2), or the composite product of the two. The shadowing
variable is left unnormalised (its mean exceeds 1), matching the
convention the rest of the estimators assume.

For every fading law whose CDF decays polynomially at 0, i.e.
F_h(t) ~ a * t^m as t -> 0, ``small_t_coefficient`` returns (a, m); this
pair drives the asymptotic outage estimators. Pure log-normal shadowing
decays faster than any power and has no such pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, special

from .errors import NoPolynomialDecay, QuadratureFailure, SingularAtZero

# 10^(x/10) == exp(DB_SCALE * x)
DB_SCALE = math.log(10.0) / 10.0


@dataclass(frozen=True)
class PathLoss:
    """Distance-to-gain law; kind is 'nonsingular' or 'singular'."""

    kind: str
    alpha: float

    def __post_init__(self):
        if self.kind not in ("nonsingular", "singular"):
            raise ValueError(f"kind must be 'nonsingular' or 'singular', got {self.kind!r}")
        if not self.alpha > 2:
            raise ValueError(f"alpha must be > 2, got {self.alpha}")

    @property
    def is_singular(self) -> bool:
        return self.kind == "singular"


def gain_from_distance_sq(model: PathLoss, d2):
    """Path gain from squared distance (avoids a sqrt in the hot path)."""
    d2 = np.asarray(d2, dtype=float)
    if model.is_singular:
        if np.any(d2 == 0.0):
            raise SingularAtZero("singular path loss diverges at distance 0")
        return d2 ** (-model.alpha / 2.0)
    return 1.0 / (1.0 + d2 ** (model.alpha / 2.0))


def path_loss(model: PathLoss, d):
    """Path gain at distance d >= 0; strictly decreasing in d."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("distance must be non-negative")
    return gain_from_distance_sq(model, d * d)


@dataclass(frozen=True)
class Nakagami:
    """Nakagami-m power fading: h ~ gamma(m, 1/m), mean 1. m=1 is Rayleigh."""

    m: float = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("m must be > 0")


@dataclass(frozen=True)
class LogNormal:
    """Log-normal shadowing 10^(X/10), X ~ N(0, sigma_db^2)."""

    sigma_db: float

    def __post_init__(self):
        if not self.sigma_db > 0:
            raise ValueError("sigma_db must be > 0")


@dataclass(frozen=True)
class Composite:
    """Independent product of Nakagami-m fading and log-normal shadowing."""

    m: float
    sigma_db: float

    def __post_init__(self):
        if not (self.m > 0 and self.sigma_db > 0):
            raise ValueError("m and sigma_db must be > 0")


FadingModel = Union[Nakagami, LogNormal, Composite]

RAYLEIGH = Nakagami(1.0)


@dataclass(frozen=True)
class SmallTCoefficient:
    """Leading term of the fading CDF at 0: F_h(t) ~ a * t^m."""

    a: float
    m: float


def sample_fading(model: FadingModel, rng: np.random.Generator, size=None):
    """Draw i.i.d. fading powers (> 0)."""
    if isinstance(model, Nakagami):
        return rng.gamma(model.m, 1.0 / model.m, size)
    if isinstance(model, LogNormal):
        return np.exp(DB_SCALE * rng.normal(0.0, model.sigma_db, size))
    if isinstance(model, Composite):
        h = rng.gamma(model.m, 1.0 / model.m, size)
        h *= np.exp(DB_SCALE * rng.normal(0.0, model.sigma_db, size))
        return h
    raise TypeError(f"unknown fading model {model!r}")


def fading_mean(model: FadingModel) -> float:
    """Closed-form mean of the fading power."""
    if isinstance(model, Nakagami):
        return 1.0
    if isinstance(model, LogNormal):
        return math.exp((DB_SCALE * model.sigma_db) ** 2 / 2.0)
    if isinstance(model, Composite):
        return math.exp((DB_SCALE * model.sigma_db) ** 2 / 2.0)
    raise TypeError(f"unknown fading model {model!r}")


def _lognormal_pdf_db(x, sigma_db):
    return np.exp(-0.5 * (x / sigma_db) ** 2) / (sigma_db * math.sqrt(2.0 * math.pi))


def _quad_checked(fn, lo, hi, rel_tol=1e-6):
    val, abserr = integrate.quad(fn, lo, hi, epsabs=1e-13, epsrel=1e-9, limit=200)
    if abserr > max(rel_tol * abs(val), 1e-12):
        raise QuadratureFailure(
            f"integral error estimate {abserr:.2e} exceeds tolerance for value {val:.6e}"
        )
    return val


def fading_cdf(model: FadingModel, t):
    """CDF of the fading power at t >= 0.

    The composite CDF mixes the gamma CDF over the shadowing value,
    F_h(t) = E_X[ F_gamma(t * 10^(-X/10)) ], and is evaluated by adaptive
    quadrature on the dB axis to 1e-6 relative tolerance.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be non-negative")
    if isinstance(model, Nakagami):
        return special.gammainc(model.m, model.m * t)
    if isinstance(model, LogNormal):
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = 0.5 * special.erfc(-10.0 * np.log10(t[pos]) / (model.sigma_db * math.sqrt(2.0)))
        return out if out.ndim else float(out)
    if isinstance(model, Composite):
        m, sigma = model.m, model.sigma_db
        lo = min(0.0, -m * DB_SCALE * sigma**2) - 8.0 * sigma
        hi = 8.0 * sigma

        def one(tv):
            if tv == 0.0:
                return 0.0
            return _quad_checked(
                lambda x: special.gammainc(m, m * tv * np.exp(-DB_SCALE * x))
                * _lognormal_pdf_db(x, sigma),
                lo,
                hi,
            )

        out = np.vectorize(one)(t)
        return out if out.ndim else float(out)
    raise TypeError(f"unknown fading model {model!r}")


def small_t_coefficient(model: FadingModel) -> SmallTCoefficient:
    """Coefficient and order of the polynomial decay of F_h at 0.

    Nakagami-m: a = m^(m-1) / Gamma(m). Composite: the Nakagami value
    weighted by the inverse-shadowing moment, computed by quadrature of
    a * integral over the shadowing density of u^-m. Raises
    NoPolynomialDecay for pure log-normal shadowing, whose CDF vanishes
    faster than any power of t.
    """
    if isinstance(model, Nakagami):
        a = model.m ** (model.m - 1.0) / special.gamma(model.m)
        return SmallTCoefficient(a=float(a), m=float(model.m))
    if isinstance(model, Composite):
        m, sigma = model.m, model.sigma_db
        a_nak = m ** (m - 1.0) / special.gamma(m)
        # integrand peaks at x = -m * DB_SCALE * sigma^2 on the dB axis
        shift = -m * DB_SCALE * sigma**2
        lo = min(0.0, shift) - 8.0 * sigma
        hi = max(0.0, shift) + 8.0 * sigma
        mom = _quad_checked(
            lambda x: np.exp(-m * DB_SCALE * x) * _lognormal_pdf_db(x, sigma), lo, hi
        )
        return SmallTCoefficient(a=float(a_nak * mom), m=float(m))
    if isinstance(model, LogNormal):
        raise NoPolynomialDecay(
            "log-normal shadowing has no polynomial CDF order at 0; "
            "use Nakagami or composite fading for asymptotic-slope work"
        )
    raise TypeError(f"unknown fading model {model!r}")
