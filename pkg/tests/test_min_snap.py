import numpy as np
import pytest
from scipy.linalg import null_space

from catenary_robot.errors import DomainError, SingularQP
from catenary_robot.trajectory import MinSnapTrajectory, WaypointPlan, min_snap
from catenary_robot.trajectory.scenarios import UMBRELLA_WAYPOINTS


def umbrella_path():
    return MinSnapTrajectory(WaypointPlan.with_total_time(UMBRELLA_WAYPOINTS, 20.0))


def test_two_waypoints_hit_exactly_and_start_and_stop_at_rest():
    plan = WaypointPlan([[0.0, 0.0, 0.5], [1.0, 2.0, 1.0]], [4.0])
    path = MinSnapTrajectory(plan)

    start, v0, a0 = path.evaluate(0.0)
    end, v1, a1 = path.evaluate(4.0)
    np.testing.assert_allclose(start, [0.0, 0.0, 0.5], atol=1e-9)
    np.testing.assert_allclose(end, [1.0, 2.0, 1.0], atol=1e-9)
    np.testing.assert_allclose(v0, np.zeros(3), atol=1e-9)
    np.testing.assert_allclose(v1, np.zeros(3), atol=1e-9)
    np.testing.assert_allclose(a0, np.zeros(3), atol=1e-9)
    np.testing.assert_allclose(a1, np.zeros(3), atol=1e-9)


def test_umbrella_waypoints_are_interpolated():
    path = umbrella_path()
    times = np.concatenate(([0.0], np.cumsum(path.durations)))
    for t, waypoint in zip(times, UMBRELLA_WAYPOINTS):
        position, _, _ = path.evaluate(float(t))
        np.testing.assert_allclose(position, waypoint, atol=1e-6)
    assert path.horizon == pytest.approx(20.0)


def test_interior_joints_are_continuous_through_snap():
    path = umbrella_path()
    for k in range(path.num_segments - 1):
        for order in range(5):
            left = path.segment_derivative(k, 1.0, order)
            right = path.segment_derivative(k + 1, 0.0, order)
            np.testing.assert_allclose(left, right, atol=1e-6)


def test_end_jerk_is_zero():
    path = umbrella_path()
    np.testing.assert_allclose(path.segment_derivative(0, 0.0, 3), np.zeros(3), atol=1e-9)
    np.testing.assert_allclose(
        path.segment_derivative(path.num_segments - 1, 1.0, 3), np.zeros(3), atol=1e-9
    )


def test_durations_proportional_to_leg_length():
    plan = WaypointPlan.with_total_time([[0, 0, 0], [1, 0, 0], [1, 3, 0]], 20.0)
    np.testing.assert_allclose(plan.durations, [5.0, 15.0])
    assert plan.total_time == pytest.approx(20.0)


def test_snap_cost_is_a_local_minimum():
    path = umbrella_path()
    rng = np.random.default_rng(5)
    base_cost = path.snap_cost()

    for axis in range(3):
        q, a_eq, _ = path.axis_problem(axis)
        basis = null_space(a_eq)
        c = path.coefficients[axis].reshape(-1)
        axis_cost = float(c @ q @ c)
        for _ in range(10):
            direction = basis @ rng.normal(size=basis.shape[1])
            perturbed = c + 1e-3 * direction / np.linalg.norm(direction)
            # Perturbation stays feasible
            np.testing.assert_allclose(a_eq @ perturbed, a_eq @ c, atol=1e-9)
            assert float(perturbed @ q @ perturbed) >= axis_cost - 1e-12 * max(1.0, axis_cost)
    assert base_cost > 0.0


def test_velocity_matches_finite_differences():
    path = umbrella_path()
    h = 1e-5
    for t in np.linspace(0.5, 19.5, 15):
        _, velocity, acceleration = path.evaluate(t)
        fd_v = (path.evaluate(t + h)[0] - path.evaluate(t - h)[0]) / (2.0 * h)
        fd_a = (path.evaluate(t + h)[1] - path.evaluate(t - h)[1]) / (2.0 * h)
        np.testing.assert_allclose(velocity, fd_v, rtol=1e-5, atol=1e-8)
        np.testing.assert_allclose(acceleration, fd_a, rtol=1e-5, atol=1e-8)


def test_holds_final_waypoint_beyond_horizon():
    path = umbrella_path()
    position, velocity, acceleration = path.evaluate(25.0)
    np.testing.assert_allclose(position, UMBRELLA_WAYPOINTS[-1], atol=1e-6)
    np.testing.assert_array_equal(velocity, np.zeros(3))
    np.testing.assert_array_equal(acceleration, np.zeros(3))


def test_zero_duration_segment_is_singular():
    plan = WaypointPlan([[0, 0, 0], [0, 0, 0], [1, 0, 0]], [0.0, 2.0])
    with pytest.raises(SingularQP):
        MinSnapTrajectory(plan)


def test_invalid_plans_are_rejected():
    with pytest.raises(DomainError):
        WaypointPlan([[0, 0, 0]], [])
    with pytest.raises(DomainError):
        WaypointPlan([[0, 0, 0], [1, 0, 0]], [1.0, 1.0])
    with pytest.raises(DomainError):
        WaypointPlan([[0, 0, 0], [1, 0, 0]], [-1.0])
    with pytest.raises(DomainError):
        WaypointPlan.with_total_time([[0, 0, 0], [0, 0, 0]])


def test_min_snap_setpoints_follow_profiles():
    def span_profile(t):
        return 0.3 + 0.01 * t, 0.01, 0.0

    trajectory = min_snap(WaypointPlan.with_total_time(UMBRELLA_WAYPOINTS, 20.0, 0.2, span_profile))
    sp = trajectory(3.0)
    position, velocity, _ = trajectory.path.evaluate(3.0)

    np.testing.assert_array_equal(sp.x_c, position)
    np.testing.assert_array_equal(sp.x_c_dot, velocity)
    assert sp.psi == 0.2 and sp.psi_dot == 0.0
    assert sp.s == pytest.approx(0.33)
    assert sp.s_dot == 0.01
    assert trajectory.horizon == pytest.approx(20.0)
