import math

import numpy as np
import pytest

from catenary_robot.catenary import CableSpec
from catenary_robot.catenary.solver import solve_two_point
from catenary_robot.control import desired_attitude
from catenary_robot.dynamics import (
    ControlCommand,
    CoupledState,
    QuadrotorParams,
    QuadrotorState,
    cable_forces,
    hover_state,
    step,
)
from catenary_robot.errors import DomainError, NumericalDivergence
from catenary_robot.utils.so3 import expmap, orthonormality_error, rot_z

MASSLESS = CableSpec(2.0, 0.0)
HEAVY = CableSpec(2.0, 0.05639)
PARAMS = QuadrotorParams()


def run(state, cmd_a, cmd_b, dt, duration, params=PARAMS):
    for _ in range(int(round(duration / dt))):
        state = step(state, cmd_a, cmd_b, dt, params)
    return state


def state_vector(state):
    return np.concatenate((state.quad_a.as_vector(), state.quad_b.as_vector()))


def test_params_validation_and_sizing():
    params = QuadrotorParams.for_cable(HEAVY)
    assert params.f_max == pytest.approx(2.0 * (0.132 + 0.05639) * 9.81)
    np.testing.assert_array_equal(params.inertia, np.diag([1.4e-5, 1.4e-5, 2.2e-5]))
    assert QuadrotorParams(inertia=np.array([1.0, 2.0, 3.0])).inertia.shape == (3, 3)

    with pytest.raises(DomainError):
        QuadrotorParams(mass=0.0)
    with pytest.raises(DomainError):
        QuadrotorParams(inertia=np.diag([1.0, -1.0, 1.0]))
    with pytest.raises(DomainError):
        QuadrotorParams(f_max=0.0)


def test_free_fall_is_exact_for_quadratic_motion():
    state = CoupledState.create([0.0, -0.4, 10.0], [0.0, 0.4, 10.0], MASSLESS)
    final = run(state, ControlCommand.zero(), ControlCommand.zero(), 0.01, 1.0)

    for quad in (final.quad_a, final.quad_b):
        assert quad.x[2] == pytest.approx(10.0 - 0.5 * 9.81, abs=1e-9)
        assert quad.v[2] == pytest.approx(-9.81, abs=1e-9)
    np.testing.assert_allclose(final.quad_a.x[:2], [0.0, -0.4], atol=1e-12)


def test_spin_about_principal_axis():
    spinning = QuadrotorState(
        x=np.array([0.0, -0.4, 10.0]), v=np.zeros(3), R=np.eye(3), omega=np.array([0.0, 0.0, 1.0])
    )
    state = CoupledState(spinning, QuadrotorState.at_rest([0.0, 0.4, 10.0]), MASSLESS)
    final = run(state, ControlCommand.zero(), ControlCommand.zero(), 0.01, 1.0)

    np.testing.assert_allclose(final.quad_a.R, rot_z(1.0), atol=1e-12)
    np.testing.assert_allclose(final.quad_a.omega, [0.0, 0.0, 1.0], atol=1e-12)


def test_torque_free_tumbling_conserves_energy_and_orthonormality():
    tumbling = QuadrotorState(
        x=np.array([0.0, -0.4, 10.0]),
        v=np.array([0.3, 0.0, 1.0]),
        R=expmap(np.array([0.3, -0.2, 0.1])),
        omega=np.array([3.0, -2.0, 1.5]),
    )
    state = CoupledState(tumbling, QuadrotorState.at_rest([0.0, 0.4, 10.0]), MASSLESS)
    start_energy = state.quad_a.mechanical_energy(PARAMS)

    for _ in range(1000):
        state = step(state, ControlCommand.zero(), ControlCommand.zero(), 1e-3, PARAMS)
        assert orthonormality_error(state.quad_a.R) <= 1e-12

    end_energy = state.quad_a.mechanical_energy(PARAMS)
    assert abs(end_energy - start_energy) / abs(start_energy) <= 1e-6
    assert np.linalg.det(state.quad_a.R) == pytest.approx(1.0, abs=1e-12)


def test_step_is_deterministic():
    state = hover_state(HEAVY, [0.0, 0.0, 1.0])
    cmd = ControlCommand(1.5, np.array([1e-4, -2e-4, 3e-5]))
    first = run(state, cmd, cmd, 0.002, 0.2)
    second = run(state, cmd, cmd, 0.002, 0.2)
    np.testing.assert_array_equal(state_vector(first), state_vector(second))


def test_step_carries_curve_parameter_forward():
    state = hover_state(HEAVY, [0.0, 0.0, 1.0])
    assert state.a_hint is None
    cmd = ControlCommand(PARAMS.weight, np.zeros(3))
    after = step(state, cmd, cmd, 0.002, PARAMS)

    horizontal = float(np.linalg.norm((after.quad_b.x - after.quad_a.x)[:2]))
    vertical = float(after.quad_a.x[2] - after.quad_b.x[2])
    exact = solve_two_point(HEAVY.length, horizontal, vertical).a
    assert after.a_hint == pytest.approx(exact, rel=1e-3)
    # The hint does not take part in state equality
    assert after == CoupledState(after.quad_a, after.quad_b, HEAVY)

    massless = step(CoupledState.create([0.0, -0.4, 1.0], [0.0, 0.4, 1.0], MASSLESS),
                    cmd, cmd, 0.002, PARAMS)
    assert massless.a_hint is None


def test_commands_are_clamped_before_integration():
    state = hover_state(HEAVY, [0.0, 0.0, 1.0])
    params = QuadrotorParams(f_max=2.0, tau_max=0.01)

    over = ControlCommand(50.0, np.array([1.0, -1.0, 0.005]))
    at_limit = ControlCommand(2.0, np.array([0.01, -0.01, 0.005]))
    np.testing.assert_array_equal(
        state_vector(step(state, over, over, 0.01, params)),
        state_vector(step(state, at_limit, at_limit, 0.01, params)),
    )

    negative = ControlCommand(-3.0, np.zeros(3))
    np.testing.assert_array_equal(
        state_vector(step(state, negative, negative, 0.01, params)),
        state_vector(step(state, ControlCommand.zero(), ControlCommand.zero(), 0.01, params)),
    )


def test_clamped_reports_change():
    cmd, changed = ControlCommand(1.0, np.zeros(3)).clamped(PARAMS)
    assert not changed and cmd.f == 1.0
    cmd, changed = ControlCommand(1e3, np.zeros(3)).clamped(PARAMS)
    assert changed and cmd.f == PARAMS.f_max


def test_divergence_is_detected():
    runaway = QuadrotorState(
        x=np.zeros(3), v=np.array([1e7, 0.0, 0.0]), R=np.eye(3), omega=np.zeros(3)
    )
    state = CoupledState(runaway, QuadrotorState.at_rest([0.0, 0.5, 0.0]), MASSLESS)
    with pytest.raises(NumericalDivergence):
        step(state, ControlCommand.zero(), ControlCommand.zero(), 0.01, PARAMS)


def test_non_positive_time_step_is_rejected():
    state = hover_state(HEAVY, [0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        step(state, ControlCommand.zero(), ControlCommand.zero(), 0.0, PARAMS)


def test_balanced_hover_stays_put():
    start = hover_state(HEAVY, [0.0, 0.0, 1.0], psi=0.4, s=0.35)
    force_a, force_b = cable_forces(start)

    thrust_a = PARAMS.weight * np.array([0.0, 0.0, 1.0]) - force_a
    thrust_b = PARAMS.weight * np.array([0.0, 0.0, 1.0]) - force_b
    state = CoupledState.create(
        start.quad_a.x, start.quad_b.x, HEAVY,
        desired_attitude(thrust_a, 0.0), desired_attitude(thrust_b, 0.0),
    )
    cmd_a = ControlCommand(float(np.linalg.norm(thrust_a)), np.zeros(3))
    cmd_b = ControlCommand(float(np.linalg.norm(thrust_b)), np.zeros(3))

    final = run(state, cmd_a, cmd_b, 1e-3, 1.0)
    assert np.linalg.norm(final.quad_a.x - start.quad_a.x) <= 1e-6
    assert np.linalg.norm(final.quad_b.x - start.quad_b.x) <= 1e-6


def test_integrator_converges_at_fourth_order():
    start = hover_state(HEAVY, [0.0, 0.0, 1.0], s=0.35)
    state = CoupledState(
        QuadrotorState(start.quad_a.x, np.zeros(3), np.eye(3), np.array([0.2, 0.1, 0.5])),
        QuadrotorState(start.quad_b.x, np.zeros(3), np.eye(3), np.array([0.2, -0.1, -0.5])),
        HEAVY,
    )
    lift = PARAMS.weight + 0.5 * HEAVY.weight
    cmd_a = ControlCommand(lift, np.array([1e-6, 0.0, 2e-6]))
    cmd_b = ControlCommand(lift, np.array([0.0, -1e-6, 0.0]))

    finals = [state_vector(run(state, cmd_a, cmd_b, dt, 1.2)) for dt in (0.04, 0.02, 0.01)]
    coarse = np.linalg.norm(finals[0] - finals[1])
    fine = np.linalg.norm(finals[1] - finals[2])
    order = math.log2(coarse / fine)
    assert 3.5 <= order <= 4.5
