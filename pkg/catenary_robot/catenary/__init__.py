"""
Catenary Geometry and Statics
"""

from catenary_robot.catenary.geometry import (
    CableSpec,
    CatenarySolution,
    Endpoint,
    EndpointKinematics,
    TensionMode,
    TensionPair,
    curve_point,
    endpoint_kinematics,
    sag,
    tension_pair,
)
from catenary_robot.catenary.solver import (
    TwoPointSolution,
    length_accel_residual,
    length_rate_residual,
    solve_a,
    solve_a_derivatives,
    solve_two_point,
)

__all__ = [
    'CableSpec',
    'CatenarySolution',
    'Endpoint',
    'EndpointKinematics',
    'TensionMode',
    'TensionPair',
    'TwoPointSolution',
    'curve_point',
    'endpoint_kinematics',
    'length_accel_residual',
    'length_rate_residual',
    'sag',
    'solve_a',
    'solve_a_derivatives',
    'solve_two_point',
    'tension_pair',
]
