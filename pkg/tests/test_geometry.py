import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adglab.errors import EmptyPattern
from adglab.geometry import Window, nearest_point, torus_distance

W = Window(100.0, 100.0)


def brute_force_torus_distance(p, q, window):
    """Literal minimum over the nine translated copies of q."""
    best = np.inf
    for sx in (-1, 0, 1):
        for sy in (-1, 0, 1):
            shifted = (q[0] + sx * window.width, q[1] + sy * window.height)
            best = min(best, float(np.hypot(p[0] - shifted[0], p[1] - shifted[1])))
    return best


def test_identity():
    assert torus_distance((0.0, 0.0), (0.0, 0.0), W) == 0.0


def test_wraparound():
    assert torus_distance((1.0, 1.0), (99.0, 1.0), W) == pytest.approx(2.0)


def test_farthest_point_on_square_torus():
    assert torus_distance((0.0, 0.0), (50.0, 50.0), W) == pytest.approx(50.0 * np.sqrt(2.0))


def test_plane_topology_is_euclidean():
    plane = Window(100.0, 100.0, "plane-with-guard")
    assert torus_distance((1.0, 1.0), (99.0, 1.0), plane) == pytest.approx(98.0)


coords = st.floats(min_value=0.0, max_value=100.0, allow_nan=False, exclude_max=True)
points = st.tuples(coords, coords)


@given(points, points)
@settings(max_examples=200, deadline=None)
def test_matches_nine_copy_enumeration(p, q):
    assert torus_distance(p, q, W) == pytest.approx(brute_force_torus_distance(p, q, W), abs=1e-9)


@given(points, points)
@settings(max_examples=100, deadline=None)
def test_symmetric_and_bounded_by_euclidean(p, q):
    d_pq = torus_distance(p, q, W)
    assert d_pq == pytest.approx(torus_distance(q, p, W))
    assert d_pq <= np.hypot(p[0] - q[0], p[1] - q[1]) + 1e-12


@given(points, points, points)
@settings(max_examples=200, deadline=None)
def test_triangle_inequality(p, q, r):
    d = lambda a, b: torus_distance(a, b, W)
    assert d(p, r) <= d(p, q) + d(q, r) + 1e-9


def test_nearest_single_point():
    rng = np.random.default_rng(0)
    idx, dist = nearest_point(np.array([[1.0, 0.0]]), (0.0, 0.0), W, rng)
    assert idx == 0
    assert dist == pytest.approx(1.0)


def test_nearest_strict_minimum():
    rng = np.random.default_rng(0)
    idx, dist = nearest_point(np.array([[2.0, 0.0], [0.0, 3.0]]), (0.0, 0.0), W, rng)
    assert idx == 0
    assert dist == pytest.approx(2.0)


def test_nearest_tie_broken_uniformly():
    rng = np.random.default_rng(1234)
    pts = np.array([[1.0, 0.0], [0.0, 1.0]])
    draws = np.array([nearest_point(pts, (0.0, 0.0), W, rng)[0] for _ in range(10_000)])
    assert abs((draws == 0).mean() - 0.5) < 0.02


def test_nearest_empty_pattern():
    with pytest.raises(EmptyPattern):
        nearest_point(np.empty((0, 2)), (0.0, 0.0), W, np.random.default_rng(0))


def test_nearest_matches_brute_force_scan():
    rng = np.random.default_rng(99)
    for _ in range(20):
        pts = rng.random((rng.integers(1, 1000), 2)) * 100.0
        z = rng.random(2) * 100.0
        idx, dist = nearest_point(pts, z, W, rng)
        oracle = min(brute_force_torus_distance(z, p, W) for p in pts)
        assert dist == pytest.approx(oracle, abs=1e-9)


def test_window_validation():
    with pytest.raises(ValueError):
        Window(-1.0, 10.0)
    with pytest.raises(ValueError):
        Window(10.0, 10.0, "moebius")
    assert Window(50.0, 20.0).area == pytest.approx(1000.0)
