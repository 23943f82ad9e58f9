import math

import numpy as np
import pytest

from aboutface._mnp import minimum_norm_point


def test_segment_midpoint():
    pts = np.array([[1.0, 0.0], [0.0, 1.0]])
    x, idx, w = minimum_norm_point(pts)
    assert np.allclose(x, [0.5, 0.5], atol=1e-12)
    assert np.linalg.norm(x) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert sorted(idx) == [0, 1]
    assert w.sum() == pytest.approx(1.0, abs=1e-12)


def test_origin_inside_hull():
    pts = np.array([[1.0, 0.0], [-1.0, 1.0], [-1.0, -1.0]])
    x, idx, w = minimum_norm_point(pts)
    assert np.linalg.norm(x) <= 1e-12
    assert np.allclose(w @ pts[idx], x, atol=1e-12)


def test_single_point():
    pts = np.array([[0.3, -0.2, 0.5]])
    x, idx, w = minimum_norm_point(pts)
    assert np.allclose(x, pts[0])
    assert idx == [0] and w[0] == 1.0


def test_duplicate_points():
    pts = np.array([[1.0, 1.0]] * 5 + [[2.0, 2.0]])
    x, _, _ = minimum_norm_point(pts)
    assert np.allclose(x, [1.0, 1.0], atol=1e-12)


def test_reconstruction_identity():
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(200, 4)) + 1.0
    x, idx, w = minimum_norm_point(pts)
    assert np.allclose(w @ pts[idx], x, atol=1e-12)
    assert np.all(w >= 0.0) and w.sum() == pytest.approx(1.0, abs=1e-12)
    assert len(idx) <= 5  # Caratheodory: support at most d + 1


def test_matches_exact_qp_when_available():
    cp = pytest.importorskip("cvxpy")
    rng = np.random.default_rng(7)
    for _ in range(5):
        pts = rng.normal(size=(60, 3))
        pts += rng.uniform(0.0, 2.0) * np.sign(pts.sum())  # vary hull/origin layout
        x, _, _ = minimum_norm_point(pts)
        w = cp.Variable(len(pts), nonneg=True)
        prob = cp.Problem(cp.Minimize(cp.sum_squares(pts.T @ w)), [cp.sum(w) == 1])
        prob.solve()
        exact = float(np.linalg.norm(pts.T @ w.value))
        assert np.linalg.norm(x) == pytest.approx(exact, abs=1e-6)
