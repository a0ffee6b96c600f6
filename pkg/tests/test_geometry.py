import math

import numpy as np
import pytest

from tverberg import (
    InvariantViolation,
    PointSet,
    edge_ball,
    h_value,
    power_center,
    support_coefficients,
    verify_tverberg,
)
from conftest import grid_refine_min_h


def test_edge_ball_axis_pair():
    ball = edge_ball([0, 0], [2, 0])
    assert np.allclose(ball.center, [1, 0])
    assert ball.radius == 1.0


def test_edge_ball_degenerate():
    ball = edge_ball([1, 1], [1, 1])
    assert np.allclose(ball.center, [1, 1])
    assert ball.radius == 0.0


def test_edge_ball_3d():
    ball = edge_ball([0, 0, 0], [1, 1, 1])
    assert np.allclose(ball.center, [0.5, 0.5, 0.5])
    assert math.isclose(ball.radius, math.sqrt(3) / 2)


def test_edge_ball_dim_mismatch():
    with pytest.raises(ValueError):
        edge_ball([0, 0], [1, 2, 3])


def test_h_value_midpoint_and_endpoint():
    pts = [[0, 0], [2, 0]]
    assert h_value(pts, [(0, 1)], [1, 0]) == -1.0
    assert h_value(pts, [(0, 1)], [0, 0]) == 0.0


def test_h_value_square_center_is_zero():
    pts = [[0, 0], [1, 0], [1, 1], [0, 1]]
    # both edge terms are (-0.5,-0.5).(0.5,-0.5) = 0 by hand
    assert h_value(pts, [(0, 1), (2, 3)], [0.5, 0.5]) == 0.0


def test_h_value_empty_edges_rejected():
    with pytest.raises(ValueError):
        h_value([[0, 0], [1, 1]], [], [0, 0])


def test_power_center_single_edge():
    wit = power_center([[0, 0], [2, 0]], [(0, 1)])
    assert np.allclose(wit.x, [1, 0], atol=1e-10)
    assert math.isclose(wit.value, -1.0, abs_tol=1e-10)
    assert wit.tight == [0]


def test_power_center_two_collinear_edges():
    # 1-D equalization: (x-1)^2 - 1 = (x-5)^2 - 1 at x = 3, value 3
    wit = power_center([[0, 0], [2, 0], [4, 0], [6, 0]], [(0, 1), (2, 3)])
    assert np.allclose(wit.x, [3, 0], atol=1e-7)
    assert math.isclose(wit.value, 3.0, abs_tol=1e-8)
    assert sorted(wit.tight) == [0, 1]


def test_power_center_square_matching():
    pts = [[0, 0], [1, 0], [1, 1], [0, 1]]
    wit = power_center(pts, [(0, 1), (2, 3)])
    assert np.allclose(wit.x, [0.5, 0.5], atol=1e-7)
    assert abs(wit.value) <= 1e-9


def test_power_center_matches_grid_oracle():
    rng = np.random.default_rng(101)
    for trial in range(40):
        n = int(rng.integers(2, 7))
        pts = rng.random((2 * n, 2)) * 4 - 2
        edges = [(2 * k, 2 * k + 1) for k in range(n)]
        wit = power_center(pts, edges)
        oracle_val, _ = grid_refine_min_h(pts, edges)
        assert abs(wit.value - oracle_val) <= 1e-5


def test_power_center_unique_from_many_starts():
    rng = np.random.default_rng(7)
    pts = rng.random((10, 3))
    edges = [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)]
    base = power_center(pts, edges)
    for s in range(5):
        wit = power_center(pts, edges, start=rng.standard_normal(3))
        assert np.linalg.norm(wit.x - base.x) <= 1e-7


def test_power_center_monotone_in_edges():
    rng = np.random.default_rng(11)
    for trial in range(25):
        pts = rng.random((12, 2))
        edges = [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)]
        before = power_center(pts, edges).value
        after = power_center(pts, edges + [(10, 11)]).value
        assert after >= before - 1e-9


def test_power_center_certificate_on_random_instances():
    rng = np.random.default_rng(13)
    for trial in range(40):
        d = int(rng.integers(1, 7))
        n = int(rng.integers(2, 8))
        pts = rng.random((2 * n, d))
        edges = [(2 * k, 2 * k + 1) for k in range(n)]
        wit = power_center(pts, edges)
        mids = np.array([(pts[a] + pts[b]) / 2 for a, b in (edges[t] for t in wit.tight)])
        support = support_coefficients(mids, wit.x)
        total = sum(v for _, v in support)
        assert math.isclose(total, 1.0, abs_tol=1e-9)


def test_dot_product_ball_identity():
    # <a-x, b-x> == ||m-x||^2 - s^2 with m, s the edge midpoint/half-length
    rng = np.random.default_rng(17)
    for trial in range(1000):
        d = int(rng.integers(1, 7))
        a = rng.standard_normal(d) * 3
        b = rng.standard_normal(d) * 3
        x = rng.standard_normal(d) * 3
        lhs = float((a - x) @ (b - x))
        m = (a + b) / 2
        s2 = float((a - b) @ (a - b)) / 4
        rhs = float((m - x) @ (m - x)) - s2
        scale = 1 + a @ a + b @ b + x @ x
        assert abs(lhs - rhs) <= 1e-9 * scale


def test_support_single_midpoint():
    assert support_coefficients([[0.5, 0.5]], [0.5, 0.5]) == [(0, 1.0)]


def test_support_symmetric_pair():
    sup = dict(support_coefficients([[1, 0], [5, 0]], [3, 0]))
    assert math.isclose(sup[0], 0.5, abs_tol=1e-9)
    assert math.isclose(sup[1], 0.5, abs_tol=1e-9)


def test_support_three_point_system():
    # lam solves lam1*(1,0) + lam2*(0,1) + lam3*(-1,-1) = 0, sum = 1,
    # whose unique solution is (1/3, 1/3, 1/3).
    sup = dict(support_coefficients([[1, 0], [0, 1], [-1, -1]], [0, 0]))
    for i in range(3):
        assert math.isclose(sup[i], 1 / 3, abs_tol=1e-9)


def test_support_infeasible_raises():
    with pytest.raises(InvariantViolation):
        support_coefficients([[1, 0], [2, 0]], [5, 5])


def test_verify_collinear_open_success():
    res = verify_tverberg([[0, 0], [2, 0], [1, 0], [3, 0]], [(0, 1), (2, 3)], mode="open")
    assert res.ok
    assert math.isclose(res.witness.value, -0.75, abs_tol=1e-9)
    assert np.allclose(res.witness.x, [1.5, 0], atol=1e-6)


def test_verify_disjoint_closed_failure_certificate():
    res = verify_tverberg([[0, 0], [1, 0], [2, 0], [3, 0]], [(0, 1), (2, 3)], mode="closed")
    assert not res.ok
    assert math.isclose(res.witness.value, 0.75, abs_tol=1e-9)
    assert np.allclose(res.witness.x, [1.5, 0], atol=1e-6)


def test_verify_square_boundary_closed_yes_open_no():
    pts = [[0, 0], [1, 0], [1, 1], [0, 1]]
    edges = [(0, 1), (2, 3)]
    assert verify_tverberg(pts, edges, mode="closed").ok
    assert not verify_tverberg(pts, edges, mode="open").ok


def test_pointset_validation():
    with pytest.raises(ValueError):
        PointSet([[0, float("nan")]])
    with pytest.raises(ValueError):
        PointSet([[0, 0], [1, 1]], colors=["r"])
    ps = PointSet([[0, 0], [1, 1]], colors=["red", "BLUE"])
    assert ps.colors == ["r", "b"]
    assert ps.red_indices == [0] and ps.blue_indices == [1]
