# catenary_robot/dynamics/simulator.py
"""Fixed-step integration of the two vehicles and the cable.

Each step is one Runge-Kutta-Munthe-Kaas stage sequence of order four.
Position, velocity and body rate are integrated as in classical RK4. The
attitude of each vehicle is written R = R0 exp(hat(theta)) with theta = 0 at
the start of the step. theta is integrated through the inverse
differential of the exponential map and mapped back at the end of the step.
"""
from typing import Optional, Tuple

import numpy as np

from catenary_robot.catenary.solver import DEFAULT_TOL
from catenary_robot.constants import E3
from catenary_robot.dynamics.cable import DEFAULT_K_TAUT, CoupledState, forces_and_parameter
from catenary_robot.dynamics.quadrotor import ControlCommand, QuadrotorParams, QuadrotorState
from catenary_robot.errors import DomainError, NumericalDivergence
from catenary_robot.utils.so3 import dexp_inv, expmap, project_to_so3

# Magnitude above which the state is considered to have blown up
DIVERGENCE_LIMIT = 1e6

# Per-vehicle stage vector: x(3), v(3), theta(3), omega(3)
_X, _V, _THETA, _OMEGA = slice(0, 3), slice(3, 6), slice(6, 9), slice(9, 12)


def _initial_vector(quad: QuadrotorState) -> np.ndarray:
    return np.concatenate((quad.x, quad.v, np.zeros(3), quad.omega))


def _vehicle_rate(
    y: np.ndarray,
    R0: np.ndarray,
    cmd: ControlCommand,
    cable_force: np.ndarray,
    params: QuadrotorParams,
    inertia_inv: np.ndarray,
) -> np.ndarray:
    theta = y[_THETA]
    omega = y[_OMEGA]
    R = R0 @ expmap(theta)

    accel = -params.gravity * E3 + (cmd.f / params.mass) * (R @ E3) + cable_force / params.mass
    omega_dot = inertia_inv @ (cmd.tau - np.cross(omega, params.inertia @ omega))
    return np.concatenate((y[_V], accel, dexp_inv(theta, omega), omega_dot))


def _coupled_rate(
    y_a: np.ndarray,
    y_b: np.ndarray,
    state: CoupledState,
    cmd_a: ControlCommand,
    cmd_b: ControlCommand,
    params: QuadrotorParams,
    inertia_inv: np.ndarray,
    k_taut: float,
    tol: float,
) -> Tuple[np.ndarray, np.ndarray, Optional[float]]:
    force_a, force_b, a = forces_and_parameter(
        y_a[_X], y_b[_X], state.cable, k_taut, tol, state.a_hint
    )
    return (
        _vehicle_rate(y_a, state.quad_a.R, cmd_a, force_a, params, inertia_inv),
        _vehicle_rate(y_b, state.quad_b.R, cmd_b, force_b, params, inertia_inv),
        a,
    )


def _finish(y: np.ndarray, R0: np.ndarray) -> QuadrotorState:
    if not np.all(np.isfinite(y)) or np.any(np.abs(y) > DIVERGENCE_LIMIT):
        raise NumericalDivergence(f"state left the valid range: {y}")
    try:
        R = project_to_so3(R0 @ expmap(y[_THETA]))
    except (ValueError, np.linalg.LinAlgError) as e:
        raise NumericalDivergence(f"attitude lost: {str(e)}") from e
    return QuadrotorState(x=y[_X].copy(), v=y[_V].copy(), R=R, omega=y[_OMEGA].copy())


def step(
    state: CoupledState,
    cmd_a: ControlCommand,
    cmd_b: ControlCommand,
    dt: float,
    params: QuadrotorParams,
    k_taut: float = DEFAULT_K_TAUT,
    tol: float = DEFAULT_TOL,
) -> CoupledState:
    """Advance the coupled system by dt with commands held constant."""
    if not dt > 0:
        raise DomainError(f"time step must be positive, got {dt}")

    cmd_a, _ = cmd_a.clamped(params)
    cmd_b, _ = cmd_b.clamped(params)
    inertia_inv = params.inertia_inv

    def rate(y_a, y_b):
        return _coupled_rate(y_a, y_b, state, cmd_a, cmd_b, params, inertia_inv, k_taut, tol)

    y_a = _initial_vector(state.quad_a)
    y_b = _initial_vector(state.quad_b)

    k1a, k1b, _ = rate(y_a, y_b)
    k2a, k2b, _ = rate(y_a + 0.5 * dt * k1a, y_b + 0.5 * dt * k1b)
    k3a, k3b, _ = rate(y_a + 0.5 * dt * k2a, y_b + 0.5 * dt * k2b)
    k4a, k4b, a_end = rate(y_a + dt * k3a, y_b + dt * k3b)

    y_a = y_a + dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
    y_b = y_b + dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)

    return CoupledState(
        quad_a=_finish(y_a, state.quad_a.R),
        quad_b=_finish(y_b, state.quad_b.R),
        cable=state.cable,
        a_hint=a_end,
    )
