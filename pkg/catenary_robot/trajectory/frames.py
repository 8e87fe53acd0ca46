# catenary_robot/trajectory/frames.py
"""Catenary-space setpoints and their conversion to per-vehicle references."""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from catenary_robot.catenary.geometry import (
    CableSpec,
    CatenarySolution,
    Endpoint,
    endpoint_kinematics,
)
from catenary_robot.catenary.solver import DEFAULT_TOL
from catenary_robot.constants import E3
from catenary_robot.utils.so3 import hat, rot_z

_S_E3 = hat(E3)
_S_E3_SQ = _S_E3 @ _S_E3


@dataclass(frozen=True)
class CatenarySetpoint:
    """Five-DOF command: lowest point, yaw and half-span with two derivatives."""

    x_c: np.ndarray
    x_c_dot: np.ndarray
    x_c_ddot: np.ndarray
    psi: float
    psi_dot: float
    psi_ddot: float
    s: float
    s_dot: float
    s_ddot: float

    @classmethod
    def static(cls, x_c, psi: float, s: float) -> 'CatenarySetpoint':
        zero = np.zeros(3)
        return cls(
            x_c=np.asarray(x_c, dtype=float),
            x_c_dot=zero,
            x_c_ddot=zero,
            psi=float(psi),
            psi_dot=0.0,
            psi_ddot=0.0,
            s=float(s),
            s_dot=0.0,
            s_ddot=0.0,
        )


@dataclass(frozen=True)
class QuadrotorReference:
    position: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray
    yaw: float


class CatenaryTrajectory(ABC):
    """Time-parameterized setpoint source."""

    # None means the trajectory is defined for all t >= 0
    horizon: Optional[float] = None

    @abstractmethod
    def sample(self, t: float) -> CatenarySetpoint:
        """Setpoint at time t"""

    def __call__(self, t: float) -> CatenarySetpoint:
        return self.sample(t)


def rotz_derivatives(
    psi: float,
    psi_dot: float,
    psi_ddot: float,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rot_z(psi) and its first two time derivatives."""
    r_c = rot_z(psi)
    r_c_dot = psi_dot * _S_E3 @ r_c
    r_c_ddot = (psi_ddot * _S_E3 + psi_dot ** 2 * _S_E3_SQ) @ r_c
    return r_c, r_c_dot, r_c_ddot


def setpoint_solution(
    sp: CatenarySetpoint,
    cable: CableSpec,
    tol: float = DEFAULT_TOL,
) -> CatenarySolution:
    return CatenarySolution.from_span(cable.length, sp.s, sp.s_dot, sp.s_ddot, tol)


def setpoint_to_references(
    sp: CatenarySetpoint,
    cable: CableSpec,
    tol: float = DEFAULT_TOL,
) -> Tuple[QuadrotorReference, QuadrotorReference]:
    """Desired position, velocity and acceleration of vehicles A and B."""
    sol = setpoint_solution(sp, cable, tol)
    r_c, r_c_dot, r_c_ddot = rotz_derivatives(sp.psi, sp.psi_dot, sp.psi_ddot)

    references = []
    for which in (Endpoint.A, Endpoint.B):
        local = endpoint_kinematics(sol, which)
        position = sp.x_c + r_c @ local.position
        velocity = sp.x_c_dot + r_c_dot @ local.position + r_c @ local.velocity
        acceleration = (
            sp.x_c_ddot
            + r_c_ddot @ local.position
            + r_c @ local.acceleration
            + 2.0 * r_c_dot @ local.velocity
        )
        # Vehicles keep the catenary yaw so the cable is not twisted
        references.append(QuadrotorReference(position, velocity, acceleration, sp.psi))

    return references[0], references[1]
