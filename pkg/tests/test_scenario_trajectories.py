import math

import numpy as np
import pytest

from catenary_robot.errors import ScenarioError, UnknownScenario
from catenary_robot.trajectory import (
    BUILTIN_TRAJECTORIES,
    HoverTrajectory,
    WaypointTrajectory,
    build_trajectory,
    scenario_trajectories,
)
from catenary_robot.trajectory.scenarios import UMBRELLA_WAYPOINTS


def setpoint_vector(sp):
    return np.concatenate((sp.x_c, [sp.psi, sp.s]))


def setpoint_rates(sp):
    return (
        np.concatenate((sp.x_c_dot, [sp.psi_dot, sp.s_dot])),
        np.concatenate((sp.x_c_ddot, [sp.psi_ddot, sp.s_ddot])),
    )


def test_flower_at_start():
    sp = scenario_trajectories("exp1_flower")(0.0)
    assert sp.s == pytest.approx(0.5)
    assert sp.s_dot == 0.0
    assert sp.psi == 0.0
    np.testing.assert_array_equal(sp.x_c, [0.0, 0.0, 0.4])


def test_flower_yaw_ramp_is_unwrapped():
    sp = scenario_trajectories("exp1_flower")(100.0)
    assert sp.psi == pytest.approx(10.0)
    assert sp.psi_dot == pytest.approx(0.1)


def test_traverse_inside_span_window():
    sp = scenario_trajectories("exp2_traverse")(4.0 * math.pi + math.pi / 2.0)
    assert sp.s == pytest.approx(0.9)
    assert sp.s_dot == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(sp.x_c, [4.0 * math.pi + math.pi / 2.0, 0.0, 0.3])


@pytest.mark.parametrize("t", [0.0, 5.0, 4.0 * math.pi - 1e-3, 5.0 * math.pi, 20.0])
def test_traverse_outside_span_window(t):
    sp = scenario_trajectories("exp2_traverse")(t)
    assert sp.s == 0.3
    assert sp.s_dot == 0.0
    assert sp.s_ddot == 0.0
    np.testing.assert_array_equal(sp.x_c_dot, [1.0, 0.0, 0.0])


def test_traverse_rate_jumps_at_window_start():
    trajectory = scenario_trajectories("exp2_traverse")
    assert trajectory(4.0 * math.pi - 1e-9).s_dot == 0.0
    assert trajectory(4.0 * math.pi).s_dot == pytest.approx(0.6)


def test_umbrella_is_a_min_snap_trajectory():
    trajectory = scenario_trajectories("exp3_umbrella")
    assert isinstance(trajectory, WaypointTrajectory)
    np.testing.assert_allclose(trajectory(0.0).x_c, UMBRELLA_WAYPOINTS[0], atol=1e-9)
    np.testing.assert_allclose(trajectory(20.0).x_c, UMBRELLA_WAYPOINTS[-1], atol=1e-9)
    assert trajectory(10.0).s == 0.3


def test_unknown_scenario_name():
    with pytest.raises(UnknownScenario):
        scenario_trajectories("exp9_nothing")


@pytest.mark.parametrize("name", sorted(BUILTIN_TRAJECTORIES))
def test_builtin_rates_match_finite_differences(name):
    trajectory = scenario_trajectories(name)
    h = 1e-5
    switch_times = (4.0 * math.pi, 5.0 * math.pi)
    for t in np.linspace(0.5, 19.5, 25):
        if any(abs(t - switch) < 1e-3 for switch in switch_times):
            continue
        rate, accel = setpoint_rates(trajectory(t))
        fd_rate = (setpoint_vector(trajectory(t + h)) - setpoint_vector(trajectory(t - h))) / (2 * h)
        rate_plus, _ = setpoint_rates(trajectory(t + h))
        rate_minus, _ = setpoint_rates(trajectory(t - h))
        fd_accel = (rate_plus - rate_minus) / (2 * h)

        np.testing.assert_allclose(rate, fd_rate, rtol=1e-5, atol=1e-8)
        np.testing.assert_allclose(accel, fd_accel, rtol=1e-5, atol=1e-8)


def test_build_trajectory_from_document_block():
    hover = build_trajectory("hover", {"x_c": [1.0, 2.0, 0.5], "psi": 0.3, "span": 0.4})
    assert isinstance(hover, HoverTrajectory)
    sp = hover(12.0)
    np.testing.assert_array_equal(sp.x_c, [1.0, 2.0, 0.5])
    assert (sp.psi, sp.s) == (0.3, 0.4)

    waypoints = build_trajectory(
        "min_snap", {"waypoints": [[0, 0, 1], [1, 0, 1]], "durations": [5.0], "span": 0.25}
    )
    assert waypoints.horizon == pytest.approx(5.0)
    assert waypoints(2.0).s == 0.25


def test_build_trajectory_rejects_bad_blocks():
    with pytest.raises(ScenarioError):
        build_trajectory("spiral", {})
    with pytest.raises(ScenarioError):
        build_trajectory("flower", {"petals": 5})
    with pytest.raises(ScenarioError):
        build_trajectory("min_snap", {"total_time": 10.0})
