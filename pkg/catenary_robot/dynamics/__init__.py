"""
Vehicle and Cable Dynamics
"""

from catenary_robot.dynamics.cable import (
    DEFAULT_K_TAUT,
    CoupledState,
    LowestPoint,
    cable_forces,
    cable_forces_at,
    hover_state,
    lowest_point_from_state,
)
from catenary_robot.dynamics.quadrotor import ControlCommand, QuadrotorParams, QuadrotorState
from catenary_robot.dynamics.simulator import step

__all__ = [
    'DEFAULT_K_TAUT',
    'ControlCommand',
    'CoupledState',
    'LowestPoint',
    'QuadrotorParams',
    'QuadrotorState',
    'cable_forces',
    'cable_forces_at',
    'hover_state',
    'lowest_point_from_state',
    'step',
]
