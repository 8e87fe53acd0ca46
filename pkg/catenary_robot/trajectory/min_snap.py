# catenary_robot/trajectory/min_snap.py
"""Minimum-snap piecewise polynomials through waypoints.

Each segment is a 7th-order polynomial in normalized segment time
tau = (t - t_k) / T_k. The integral of squared snap is minimized subject to
waypoint interpolation, continuity of velocity through snap at interior
joints and rest (zero velocity, acceleration, jerk) at both ends.
"""
from dataclasses import dataclass
from math import factorial
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from catenary_robot.errors import DomainError, SingularQP
from catenary_robot.trajectory.frames import CatenarySetpoint, CatenaryTrajectory
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

Profile = Union[float, Callable[[float], Tuple[float, float, float]]]

POLY_ORDER = 7
NUM_COEFFS = POLY_ORDER + 1
SNAP = 4
DEFAULT_TOTAL_TIME = 20.0


def _falling(i: int, d: int) -> float:
    return factorial(i) / factorial(i - d)


def _derivative_row(order: int, tau: float, duration: float) -> np.ndarray:
    """Row mapping segment coefficients to the order-th time derivative."""
    row = np.zeros(NUM_COEFFS)
    scale = duration ** -order
    for i in range(order, NUM_COEFFS):
        row[i] = _falling(i, order) * tau ** (i - order) * scale
    return row


def _snap_cost_matrix(duration: float) -> np.ndarray:
    """Quadratic form of the squared-snap integral over one segment."""
    q = np.zeros((NUM_COEFFS, NUM_COEFFS))
    for i in range(SNAP, NUM_COEFFS):
        for j in range(SNAP, NUM_COEFFS):
            q[i, j] = (
                _falling(i, SNAP) * _falling(j, SNAP)
                / (i + j - 2 * SNAP + 1)
                * duration ** (1 - 2 * SNAP)
            )
    return q


def _profile_value(profile: Profile, t: float) -> Tuple[float, float, float]:
    if callable(profile):
        value, rate, accel = profile(t)
        return float(value), float(rate), float(accel)
    return float(profile), 0.0, 0.0


@dataclass(frozen=True)
class WaypointPlan:
    """Waypoints for the lowest point, leg durations and yaw/span profiles.

    ``yaw`` and ``span`` are either constants or callables returning
    (value, rate, acceleration) at time t.
    """

    waypoints: np.ndarray
    durations: np.ndarray
    yaw: Profile = 0.0
    span: Profile = 0.3

    def __post_init__(self):
        waypoints = np.atleast_2d(np.asarray(self.waypoints, dtype=float))
        durations = np.asarray(self.durations, dtype=float).reshape(-1)
        if waypoints.shape[0] < 2 or waypoints.shape[1] != 3:
            raise DomainError(f"need at least two 3-D waypoints, got shape {waypoints.shape}")
        if durations.shape[0] != waypoints.shape[0] - 1:
            raise DomainError(
                f"{waypoints.shape[0]} waypoints need {waypoints.shape[0] - 1} durations"
            )
        if np.any(~np.isfinite(durations)) or np.any(durations < 0):
            raise DomainError(f"durations must be finite and non-negative: {durations}")
        object.__setattr__(self, 'waypoints', waypoints)
        object.__setattr__(self, 'durations', durations)

    @classmethod
    def with_total_time(
        cls,
        waypoints: Sequence[Sequence[float]],
        total_time: float = DEFAULT_TOTAL_TIME,
        yaw: Profile = 0.0,
        span: Profile = 0.3,
    ) -> 'WaypointPlan':
        """Leg durations proportional to leg length."""
        points = np.asarray(waypoints, dtype=float)
        distances = np.linalg.norm(np.diff(points, axis=0), axis=1)
        total = distances.sum()
        if total <= 0:
            raise DomainError("waypoints do not move")
        return cls(points, total_time * distances / total, yaw, span)

    @property
    def total_time(self) -> float:
        return float(self.durations.sum())


class MinSnapTrajectory:
    """Per-axis minimum-snap solution of a waypoint plan."""

    def __init__(self, plan: WaypointPlan):
        self.plan = plan
        self.durations = plan.durations
        self.num_segments = len(plan.durations)
        self.start_times = np.concatenate(([0.0], np.cumsum(self.durations)[:-1]))
        self.horizon = plan.total_time

        if np.any(self.durations <= 0):
            raise SingularQP(f"zero-duration segment in {self.durations}")

        # coefficients[axis] has shape (num_segments, NUM_COEFFS)
        self.coefficients: List[np.ndarray] = []
        for axis in range(3):
            q, a_eq, b_eq = self.axis_problem(axis)
            self.coefficients.append(self._solve(q, a_eq, b_eq, axis))

        logger.debug(
            "Min-snap trajectory: %d segments over %.3f s", self.num_segments, self.horizon
        )

    def axis_problem(self, axis: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cost matrix and equality constraints for one axis."""
        n = NUM_COEFFS
        m = self.num_segments
        total_vars = n * m
        positions = self.plan.waypoints[:, axis]

        q = np.zeros((total_vars, total_vars))
        for k, duration in enumerate(self.durations):
            q[k * n:(k + 1) * n, k * n:(k + 1) * n] = _snap_cost_matrix(duration)

        rows = []
        values = []

        def add(row_parts, value):
            row = np.zeros(total_vars)
            for k, part in row_parts:
                row[k * n:(k + 1) * n] += part
            rows.append(row)
            values.append(value)

        for k, duration in enumerate(self.durations):
            add([(k, _derivative_row(0, 0.0, duration))], positions[k])
            add([(k, _derivative_row(0, 1.0, duration))], positions[k + 1])

        # Start and end at rest
        for order in (1, 2, 3):
            add([(0, _derivative_row(order, 0.0, self.durations[0]))], 0.0)
            add([(m - 1, _derivative_row(order, 1.0, self.durations[-1]))], 0.0)

        # Interior joints: velocity through snap continuous
        for k in range(m - 1):
            for order in range(1, SNAP + 1):
                add(
                    [
                        (k, _derivative_row(order, 1.0, self.durations[k])),
                        (k + 1, -_derivative_row(order, 0.0, self.durations[k + 1])),
                    ],
                    0.0,
                )

        return q, np.array(rows), np.array(values)

    def _solve(self, q: np.ndarray, a_eq: np.ndarray, b_eq: np.ndarray, axis: int) -> np.ndarray:
        total_vars = q.shape[0]
        num_rows = a_eq.shape[0]
        if np.linalg.matrix_rank(a_eq) < num_rows:
            raise SingularQP(f"constraint matrix of axis {axis} is rank deficient")

        # KKT system of min c'Qc s.t. A c = b; Q rescaled, the minimizer is unchanged
        scale = np.abs(q).max()
        q_scaled = q / scale if scale > 0 else q
        kkt = np.zeros((total_vars + num_rows, total_vars + num_rows))
        kkt[:total_vars, :total_vars] = 2.0 * q_scaled
        kkt[:total_vars, total_vars:] = a_eq.T
        kkt[total_vars:, :total_vars] = a_eq
        rhs = np.zeros(total_vars + num_rows)
        rhs[total_vars:] = b_eq

        try:
            sol = np.linalg.solve(kkt, rhs)
        except np.linalg.LinAlgError as e:
            raise SingularQP(f"KKT system of axis {axis} is singular: {str(e)}") from e
        return sol[:total_vars].reshape(self.num_segments, NUM_COEFFS)

    def snap_cost(self) -> float:
        """Integral of squared snap summed over the three axes."""
        total = 0.0
        for axis in range(3):
            q, _, _ = self.axis_problem(axis)
            c = self.coefficients[axis].reshape(-1)
            total += float(c @ q @ c)
        return total

    def segment_derivative(self, segment: int, tau: float, order: int) -> np.ndarray:
        """order-th time derivative of segment at normalized time tau."""
        row = _derivative_row(order, tau, self.durations[segment])
        return np.array([row @ self.coefficients[axis][segment] for axis in range(3)])

    def _locate(self, t: float) -> Tuple[int, float]:
        t = min(max(t, 0.0), self.horizon)
        segment = int(np.searchsorted(self.start_times, t, side='right')) - 1
        segment = min(max(segment, 0), self.num_segments - 1)
        tau = (t - self.start_times[segment]) / self.durations[segment]
        return segment, min(max(tau, 0.0), 1.0)

    def evaluate(self, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Position, velocity and acceleration at time t.

        Outside [0, horizon] the end waypoint is held at rest.
        """
        segment, tau = self._locate(t)
        position = self.segment_derivative(segment, tau, 0)
        if t < 0.0 or t > self.horizon:
            return position, np.zeros(3), np.zeros(3)
        return (
            position,
            self.segment_derivative(segment, tau, 1),
            self.segment_derivative(segment, tau, 2),
        )


class WaypointTrajectory(CatenaryTrajectory):
    """Lowest point on a minimum-snap path, yaw and span from the plan profiles."""

    def __init__(self, plan: WaypointPlan):
        self.plan = plan
        self.path = MinSnapTrajectory(plan)
        self.horizon = self.path.horizon

    def sample(self, t: float) -> CatenarySetpoint:
        position, velocity, acceleration = self.path.evaluate(t)
        psi, psi_dot, psi_ddot = _profile_value(self.plan.yaw, t)
        s, s_dot, s_ddot = _profile_value(self.plan.span, t)
        return CatenarySetpoint(
            x_c=position,
            x_c_dot=velocity,
            x_c_ddot=acceleration,
            psi=psi,
            psi_dot=psi_dot,
            psi_ddot=psi_ddot,
            s=s,
            s_dot=s_dot,
            s_ddot=s_ddot,
        )


def min_snap(plan: WaypointPlan) -> WaypointTrajectory:
    """Setpoint trajectory whose lowest point follows the minimum-snap path."""
    return WaypointTrajectory(plan)
