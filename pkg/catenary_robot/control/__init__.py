"""
Tracking Control
"""

from catenary_robot.control.controller import (
    CatenaryController,
    Gains,
    GravitySign,
    QuadrotorController,
    TensionSource,
    TrackingError,
    VehicleCommand,
    attitude_error,
    attitude_torque,
    desired_attitude,
    desired_force,
    thrust_projection,
)

__all__ = [
    'CatenaryController',
    'Gains',
    'GravitySign',
    'QuadrotorController',
    'TensionSource',
    'TrackingError',
    'VehicleCommand',
    'attitude_error',
    'attitude_torque',
    'desired_attitude',
    'desired_force',
    'thrust_projection',
]
