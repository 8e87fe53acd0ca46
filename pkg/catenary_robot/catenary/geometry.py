# catenary_robot/catenary/geometry.py
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from catenary_robot.catenary.solver import DEFAULT_TOL, solve_a, solve_a_derivatives
from catenary_robot.constants import GRAVITY
from catenary_robot.errors import DomainError


class Endpoint(str, Enum):
    A = 'A'
    B = 'B'


class TensionMode(str, Enum):
    # classical statics balance the cable weight; SAG takes w * z at the endpoint
    CLASSICAL = 'classical'
    SAG = 'paper'

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str) and value.lower() == 'sag':
            return cls.SAG
        return None


@dataclass(frozen=True)
class CableSpec:
    """Flexible, inextensible cable."""

    length: float
    mass: float
    gravity: float = GRAVITY

    def __post_init__(self):
        if not (math.isfinite(self.length) and self.length > 0):
            raise DomainError(f"cable length must be positive, got {self.length}")
        if not (math.isfinite(self.mass) and self.mass >= 0):
            raise DomainError(f"cable mass must be non-negative, got {self.mass}")
        if self.gravity <= 0:
            raise DomainError(f"gravity must be positive, got {self.gravity}")

    @property
    def weight(self) -> float:
        return self.mass * self.gravity

    @property
    def weight_per_length(self) -> float:
        """w = m_C g / l in N/m."""
        return self.mass * self.gravity / self.length

    def with_payload(self, payload_mass: float) -> 'CableSpec':
        """Cable with a point mass lumped into its own mass."""
        return CableSpec(self.length, self.mass + payload_mass, self.gravity)


@dataclass(frozen=True)
class CatenarySolution:
    """Curve parameter and half-span of a symmetric catenary, with rates."""

    a: float
    s: float
    a_dot: float = 0.0
    a_ddot: float = 0.0
    s_dot: float = 0.0
    s_ddot: float = 0.0

    @classmethod
    def from_span(
        cls,
        length: float,
        s: float,
        s_dot: float = 0.0,
        s_ddot: float = 0.0,
        tol: float = DEFAULT_TOL,
    ) -> 'CatenarySolution':
        a = solve_a(length, s, tol)
        a_dot, a_ddot = solve_a_derivatives(a, s, s_dot, s_ddot)
        return cls(a=a, s=s, a_dot=a_dot, a_ddot=a_ddot, s_dot=s_dot, s_ddot=s_ddot)

    @property
    def sag(self) -> float:
        return sag(self.a, self.s)


@dataclass(frozen=True)
class TensionPair:
    """Compensation tensions at both ends, catenary frame."""

    t_a: np.ndarray
    t_b: np.ndarray

    def for_endpoint(self, which: Endpoint) -> np.ndarray:
        return self.t_a if Endpoint(which) is Endpoint.A else self.t_b


@dataclass(frozen=True)
class EndpointKinematics:
    position: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray


def sag(a: float, s: float) -> float:
    """Vertical drop from the supports to the lowest point."""
    return a * (math.cosh(s / a) - 1.0)


def curve_point(a: float, r: float, s: float) -> np.ndarray:
    """Point of the curve at parameter r in the catenary frame."""
    if a <= 0:
        raise DomainError(f"curve parameter must be positive, got {a}")
    if abs(r) > s:
        raise DomainError(f"curve parameter {r} outside [-{s}, {s}]")
    return np.array([0.0, r, a * (math.cosh(r / a) - 1.0)])


def endpoint_kinematics(sol: CatenarySolution, which: Endpoint) -> EndpointKinematics:
    """Position, velocity and acceleration of one support in the catenary frame."""
    a, s = sol.a, sol.s
    a_dot, a_ddot = sol.a_dot, sol.a_ddot
    s_dot, s_ddot = sol.s_dot, sol.s_ddot

    x = s / a
    cosh_x = math.cosh(x)
    sinh_x = math.sinh(x)
    u = s_dot - s * a_dot / a

    z = a * (cosh_x - 1.0)
    z_dot = a_dot * (cosh_x - 1.0) + u * sinh_x
    z_ddot = (
        a_ddot * (cosh_x - 1.0)
        + (s_ddot - s * a_ddot / a) * sinh_x
        + (u * u / a) * cosh_x
    )

    side = -1.0 if Endpoint(which) is Endpoint.A else 1.0
    return EndpointKinematics(
        position=np.array([0.0, side * s, z]),
        velocity=np.array([0.0, side * s_dot, z_dot]),
        acceleration=np.array([0.0, side * s_ddot, z_ddot]),
    )


def tension_pair(
    cable: CableSpec,
    sol: CatenarySolution,
    mode: TensionMode = TensionMode.CLASSICAL,
) -> TensionPair:
    """Tension each vehicle must add to cancel the pull of the cable."""
    w = cable.weight_per_length
    horizontal = w * sol.a
    if TensionMode(mode) is TensionMode.SAG:
        vertical = w * sol.sag
    else:
        vertical = w * sol.a * math.sinh(sol.s / sol.a)
    return TensionPair(
        t_a=np.array([0.0, -horizontal, vertical]),
        t_b=np.array([0.0, horizontal, vertical]),
    )
