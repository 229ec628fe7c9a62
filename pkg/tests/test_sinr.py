import math

import numpy as np
import pytest

from adglab.errors import BinStarved, EmptyPattern, NoPolynomialDecay
from adglab.geometry import Window
from adglab.point_process import Poisson
from adglab.propagation import LogNormal, Nakagami, PathLoss
from adglab.sinr import (
    Scenario,
    curve_from_sinr,
    default_theta_db_grid,
    draw_batch,
    estimate_kappa,
    estimate_success_curve,
    interference_moment,
    interference_tail_ccdf,
    noise_from_mean_snr_db,
    sample_sinr,
    sinr_at,
)

W = Window(100.0, 100.0)
NS4 = PathLoss("nonsingular", 4.0)
SING4 = PathLoss("singular", 4.0)
RAY = Nakagami(1.0)


def ppp_scenario(seed, path_loss=NS4, fading=RAY, noise=0.0, lam=0.1):
    return Scenario(Poisson(lam), path_loss, fading, noise, W, seed)


class TestKernel:
    def test_single_point_pattern_no_noise(self):
        s = sinr_at(np.array([[10.0, 10.0]]), NS4, RAY, 0.0, W, np.random.default_rng(0))
        assert s.interference == 0.0
        assert s.sinr == math.inf  # success at every threshold

    def test_single_point_with_noise_is_finite(self):
        s = sinr_at(np.array([[10.0, 10.0]]), NS4, RAY, 1.0, W, np.random.default_rng(0))
        assert np.isfinite(s.sinr) and s.sinr > 0

    def test_empty_pattern(self):
        with pytest.raises(EmptyPattern):
            sinr_at(np.empty((0, 2)), NS4, RAY, 0.0, W, np.random.default_rng(0))

    def test_fields_consistent(self):
        s = sample_sinr(ppp_scenario(5), np.random.default_rng(5))
        from adglab.propagation import path_loss

        recon = s.h_serving * path_loss(NS4, s.xi) / (s.interference + 0.0)
        assert s.sinr == pytest.approx(recon)

    def test_noise_dominated(self):
        curve = estimate_success_curve(ppp_scenario(7, noise=1e9), theta_db=[-20.0], n=2000)
        assert curve.p_hat[0] < 0.01

    def test_sample_sinr_matches_batch_replicate(self):
        s = ppp_scenario(11)
        batch = draw_batch(s, 3)
        for k in range(3):
            smp = sample_sinr(s, np.random.default_rng((s.seed, k)))
            assert smp.sinr == batch.sinr[k]
            assert smp.xi == batch.xi[k]


class TestDeterminism:
    def test_batch_reproducible(self):
        a = draw_batch(ppp_scenario(21), 500)
        b = draw_batch(ppp_scenario(21), 500)
        assert np.array_equal(a.sinr, b.sinr)

    def test_independent_of_thread_count(self):
        a = draw_batch(ppp_scenario(22), 600)
        b = draw_batch(ppp_scenario(22), 600, threads=2)
        assert np.array_equal(a.sinr, b.sinr)
        assert np.array_equal(a.interference, b.interference)

    def test_probes_round_up(self):
        batch = draw_batch(ppp_scenario(23), 10, probes_per_pattern=4)
        assert batch.n == 12
        assert batch.patterns == 3


class TestCurve:
    def test_monotone_and_bounded(self):
        curve = estimate_success_curve(ppp_scenario(31), n=5000)
        assert np.all(np.diff(curve.p_hat) <= 0)
        assert np.all(curve.ci_lo <= curve.p_hat) and np.all(curve.p_hat <= curve.ci_hi)
        assert curve.p_hat[0] > 0.95  # theta -> -40 dB tail

    def test_default_grid(self):
        g = default_theta_db_grid()
        assert len(g) == 61 and g[0] == -40.0 and g[-1] == 20.0

    def test_matches_closed_form_spot_checks(self):
        # singular model: quadrature baseline applies exactly
        curve = estimate_success_curve(
            ppp_scenario(33, path_loss=SING4), theta_db=[-20.0, 0.0], n=30_000
        )
        from adglab.ppp import ppp_success_rayleigh

        for i, theta in enumerate((0.01, 1.0)):
            expect = ppp_success_rayleigh(theta, 4.0)
            half = (curve.ci_hi[i] - curve.ci_lo[i]) / 2
            assert abs(curve.p_hat[i] - expect) < 3 * half

    def test_curve_from_sinr_shared_samples(self):
        sinr = np.array([0.5, 1.5, 2.5, math.inf])
        curve = curve_from_sinr(sinr, np.array([-10.0, 0.0, 10.0]))
        assert list(curve.p_hat) == [1.0, 0.75, 0.25]

    def test_process_ordering(self):
        # regularity helps, clustering hurts: mhp >= ppp >= mcp pointwise
        # (within the Wilson bands of the cheaper estimates)
        from adglab.point_process import MaternCluster, MaternHardCore

        grid = np.arange(-20.0, 11.0, 2.0)
        curves = {}
        for tag, proc, probes in (
            ("ppp", Poisson(0.1), 4),
            ("mcp", MaternCluster(0.01, 10.0, 5.0), 8),
            ("mhp", MaternHardCore(0.263, 1.7), 16),
        ):
            s = Scenario(proc, NS4, RAY, 0.0, W, 60)
            curves[tag] = estimate_success_curve(s, grid, 25_000, probes)
        slack = 3 * (curves["ppp"].ci_hi - curves["ppp"].ci_lo)
        assert np.all(curves["mhp"].p_hat >= curves["ppp"].p_hat - slack)
        assert np.all(curves["ppp"].p_hat >= curves["mcp"].p_hat - slack)


class TestKappa:
    def test_ppp_singular_alpha4(self):
        k, se = estimate_kappa(ppp_scenario(41, path_loss=SING4), n=50_000)
        assert abs(k - 1.0) < 0.05

    def test_ppp_singular_alpha3(self):
        k, se = estimate_kappa(
            ppp_scenario(42, path_loss=PathLoss("singular", 3.0)), n=50_000
        )
        assert abs(k - 2.0) / 2.0 < 0.05

    def test_lognormal_rejected(self):
        with pytest.raises(NoPolynomialDecay):
            estimate_kappa(ppp_scenario(43, fading=LogNormal(2.0)), n=100)

    def test_mhp_singular_alpha4(self):
        # hard-core network: kappa near 1/1.58 (its published gain at
        # alpha=4, where the Poisson reference kappa is exactly 1)
        from adglab.point_process import MaternHardCore

        s = Scenario(MaternHardCore(0.263, 1.7), SING4, RAY, 0.0, W, 48)
        k, se = estimate_kappa(s, n=40_000, probes_per_pattern=16)
        assert abs(k - 1.0 / 1.58) < 0.05

    def test_consistent_with_outage_ratio(self):
        # (1 - P_c(theta)) / theta at theta = -30 dB approximates kappa
        s = ppp_scenario(44, path_loss=SING4)
        curve = estimate_success_curve(s, theta_db=[-30.0], n=150_000)
        outage = 1.0 - curve.p_hat[0]
        outage_se = (curve.ci_hi[0] - curve.ci_lo[0]) / 2 / 1.96
        theta = 1e-3
        k, k_se = estimate_kappa(ppp_scenario(45, path_loss=SING4), n=150_000)
        combined = math.hypot(outage_se / theta, k_se)
        assert abs(outage / theta - k) < 3 * combined

    def test_noise_vanishing_effect(self):
        k0, _ = estimate_kappa(ppp_scenario(46), n=50_000)
        w20 = noise_from_mean_snr_db(NS4, 20.0)
        k20, _ = estimate_kappa(ppp_scenario(47, noise=w20), n=50_000)
        assert abs(k20 - k0) / k0 < 0.15


class TestInterference:
    def test_moment_finite_and_stable(self):
        v1 = interference_moment(ppp_scenario(51), 1, (0.0, math.inf), 20_000)
        v2 = interference_moment(ppp_scenario(52), 1, (0.0, math.inf), 40_000)
        assert np.isfinite(v1) and np.isfinite(v2)
        assert abs(v1 - v2) / v2 < 0.1

    def test_singular_bins_follow_campbell(self):
        # E[I | xi = y] = pi * lam / y^2 for the Poisson network, alpha=4
        s = ppp_scenario(53, path_loss=SING4)
        for y in (0.5, 1.0, 2.0):
            v = interference_moment(s, 1, (0.9 * y, 1.1 * y), 150_000)
            expect = math.pi * 0.1 / y**2
            assert v == pytest.approx(expect, rel=0.2)

    def test_bin_starved(self):
        with pytest.raises(BinStarved):
            interference_moment(ppp_scenario(54), 1, (30.0, 31.0), 2000)

    def test_zero_interference_single_point(self):
        s = sinr_at(np.array([[1.0, 1.0]]), NS4, RAY, 0.0, W, np.random.default_rng(1))
        assert s.interference == 0.0

    def test_tail_ccdf_basics(self):
        levels = np.array([0.0, 0.5, 1.0, 2.0])
        c = interference_tail_ccdf(ppp_scenario(55), levels, 20_000)
        assert c[0] == 1.0
        assert np.all(np.diff(c) <= 0)


def test_noise_convention():
    assert noise_from_mean_snr_db(NS4, 20.0) == pytest.approx(0.005)
    assert noise_from_mean_snr_db(SING4, 20.0) == pytest.approx(0.01)


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(Poisson(0.1), NS4, RAY, -1.0, W, 1)
    with pytest.raises(ValueError):
        Scenario(Poisson(0.1), NS4, RAY, 0.0, W, -5)
