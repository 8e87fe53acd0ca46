# catenary_robot/trajectory/scenarios.py
"""Closed-form experiment trajectories and the trajectory factory."""
import math
from typing import Any, Dict, Mapping

import numpy as np

from catenary_robot.errors import ScenarioError, UnknownScenario
from catenary_robot.trajectory.frames import CatenarySetpoint, CatenaryTrajectory
from catenary_robot.trajectory.min_snap import DEFAULT_TOTAL_TIME, WaypointPlan, min_snap
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

UMBRELLA_WAYPOINTS = [
    [-1.6, -0.1, 0.6],
    [0.0, -0.2, 0.6],
    [0.6, 0.17, 0.509],
    [0.8, 0.7, 1.0],
]

# Approach, dip under the hook, pull through, lift and carry
TRANSPORT_WAYPOINTS = [
    [0.0, 0.0, 0.6],
    [1.0, 0.0, 0.6],
    [1.0, 0.0, 0.2],
    [1.3, 0.0, 0.25],
    [2.5, 0.5, 0.8],
]


class FlowerTrajectory(CatenaryTrajectory):
    """Static lowest point while yaw ramps and the span oscillates."""

    def __init__(
        self,
        x_c=(0.0, 0.0, 0.4),
        yaw_rate: float = 0.1,
        span_mean: float = 0.35,
        span_amp: float = 0.15,
        span_freq: float = 1.0,
    ):
        self.x_c = np.asarray(x_c, dtype=float)
        self.yaw_rate = yaw_rate
        self.span_mean = span_mean
        self.span_amp = span_amp
        self.span_freq = span_freq

    def sample(self, t: float) -> CatenarySetpoint:
        w = self.span_freq
        zero = np.zeros(3)
        return CatenarySetpoint(
            x_c=self.x_c.copy(),
            x_c_dot=zero,
            x_c_ddot=zero,
            psi=self.yaw_rate * t,
            psi_dot=self.yaw_rate,
            psi_ddot=0.0,
            s=self.span_mean + self.span_amp * math.cos(w * t),
            s_dot=-self.span_amp * w * math.sin(w * t),
            s_ddot=-self.span_amp * w * w * math.cos(w * t),
        )


class TraverseTrajectory(CatenaryTrajectory):
    """Constant-altitude sweep with a span excursion in a time window.

    The span is base + amp * sin(t) inside [window_start, window_end) and
    base elsewhere; its derivatives are commanded as written, so the rate
    jumps at the window edges.
    """

    def __init__(
        self,
        start=(0.0, 0.0, 0.3),
        velocity=(1.0, 0.0, 0.0),
        yaw: float = 0.0,
        span_base: float = 0.3,
        span_amp: float = 0.6,
        window_start: float = 4.0 * math.pi,
        window_end: float = 5.0 * math.pi,
    ):
        self.start = np.asarray(start, dtype=float)
        self.velocity = np.asarray(velocity, dtype=float)
        self.yaw = yaw
        self.span_base = span_base
        self.span_amp = span_amp
        self.window_start = window_start
        self.window_end = window_end

    def sample(self, t: float) -> CatenarySetpoint:
        if self.window_start <= t < self.window_end:
            s = self.span_base + self.span_amp * math.sin(t)
            s_dot = self.span_amp * math.cos(t)
            s_ddot = -self.span_amp * math.sin(t)
        else:
            s, s_dot, s_ddot = self.span_base, 0.0, 0.0
        return CatenarySetpoint(
            x_c=self.start + self.velocity * t,
            x_c_dot=self.velocity.copy(),
            x_c_ddot=np.zeros(3),
            psi=self.yaw,
            psi_dot=0.0,
            psi_ddot=0.0,
            s=s,
            s_dot=s_dot,
            s_ddot=s_ddot,
        )


class HoverTrajectory(CatenaryTrajectory):
    def __init__(self, x_c=(0.0, 0.0, 0.4), psi: float = 0.0, span: float = 0.35):
        self.setpoint = CatenarySetpoint.static(x_c, psi, span)

    def sample(self, t: float) -> CatenarySetpoint:
        return self.setpoint


def _waypoint_trajectory(params: Mapping[str, Any]) -> CatenaryTrajectory:
    waypoints = params.get('waypoints')
    if waypoints is None:
        raise ScenarioError("min_snap trajectory needs 'waypoints'")
    yaw = float(params.get('yaw', 0.0))
    span = float(params.get('span', 0.3))
    if params.get('durations') is not None:
        plan = WaypointPlan(np.asarray(waypoints, dtype=float), params['durations'], yaw, span)
    else:
        total_time = float(params.get('total_time', DEFAULT_TOTAL_TIME))
        plan = WaypointPlan.with_total_time(waypoints, total_time, yaw, span)
    return min_snap(plan)


TRAJECTORY_TYPES = {
    'flower': FlowerTrajectory,
    'traverse': TraverseTrajectory,
    'hover': HoverTrajectory,
    'min_snap': _waypoint_trajectory,
}

FLOWER_BLOCK: Dict[str, Any] = {
    'type': 'flower',
    'params': {'x_c': [0.0, 0.0, 0.4], 'yaw_rate': 0.1, 'span_mean': 0.35,
               'span_amp': 0.15, 'span_freq': 1.0},
}

# Trajectory blocks of the built-in experiments; the cable study flies the flower
BUILTIN_TRAJECTORIES: Dict[str, Dict[str, Any]] = {
    'exp1_flower': FLOWER_BLOCK,
    'exp1_2_cables': FLOWER_BLOCK,
    'exp1_2_rope': FLOWER_BLOCK,
    'exp1_2_steel': FLOWER_BLOCK,
    'exp2_traverse': {
        'type': 'traverse',
        'params': {'start': [0.0, 0.0, 0.3], 'velocity': [1.0, 0.0, 0.0], 'yaw': 0.0,
                   'span_base': 0.3, 'span_amp': 0.6,
                   'window_start': 4.0 * math.pi, 'window_end': 5.0 * math.pi},
    },
    'exp3_umbrella': {
        'type': 'min_snap',
        'params': {'waypoints': UMBRELLA_WAYPOINTS, 'total_time': 20.0,
                   'yaw': 0.0, 'span': 0.3},
    },
    'exp4_transport': {
        'type': 'min_snap',
        'params': {'waypoints': TRANSPORT_WAYPOINTS, 'total_time': 20.0,
                   'yaw': 0.0, 'span': 0.3},
    },
}


def build_trajectory(kind: str, params: Mapping[str, Any]) -> CatenaryTrajectory:
    """Instantiate a trajectory from a scenario document's trajectory block."""
    factory = TRAJECTORY_TYPES.get(kind)
    if factory is None:
        raise ScenarioError(
            f"unknown trajectory type '{kind}', expected one of {sorted(TRAJECTORY_TYPES)}"
        )
    try:
        return factory(**dict(params)) if kind != 'min_snap' else factory(params)
    except TypeError as e:
        raise ScenarioError(f"bad parameters for '{kind}' trajectory: {str(e)}") from e


def scenario_trajectories(name: str) -> CatenaryTrajectory:
    """Exact trajectory of a built-in experiment."""
    block = BUILTIN_TRAJECTORIES.get(name)
    if block is None:
        raise UnknownScenario(name)
    return build_trajectory(block['type'], block['params'])
