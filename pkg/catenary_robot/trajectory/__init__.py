"""
Catenary Trajectories and Frame Conversion
"""

from catenary_robot.trajectory.frames import (
    CatenarySetpoint,
    CatenaryTrajectory,
    QuadrotorReference,
    rotz_derivatives,
    setpoint_solution,
    setpoint_to_references,
)
from catenary_robot.trajectory.min_snap import (
    MinSnapTrajectory,
    WaypointPlan,
    WaypointTrajectory,
    min_snap,
)
from catenary_robot.trajectory.scenarios import (
    BUILTIN_TRAJECTORIES,
    FlowerTrajectory,
    HoverTrajectory,
    TraverseTrajectory,
    build_trajectory,
    scenario_trajectories,
)

__all__ = [
    'BUILTIN_TRAJECTORIES',
    'CatenarySetpoint',
    'CatenaryTrajectory',
    'FlowerTrajectory',
    'HoverTrajectory',
    'MinSnapTrajectory',
    'QuadrotorReference',
    'TraverseTrajectory',
    'WaypointPlan',
    'WaypointTrajectory',
    'build_trajectory',
    'min_snap',
    'rotz_derivatives',
    'scenario_trajectories',
    'setpoint_solution',
    'setpoint_to_references',
]
