# catenary_robot/dynamics/quadrotor.py
"""Rigid-body parameters, state and actuator command of one quadrotor."""
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from catenary_robot.catenary.geometry import CableSpec
from catenary_robot.constants import GRAVITY
from catenary_robot.errors import DomainError
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_MASS = 0.132
DEFAULT_INERTIA_DIAG = (1.4e-5, 1.4e-5, 2.2e-5)
DEFAULT_TAU_MAX = 0.1
# Thrust-to-weight of the loaded vehicle
THRUST_TO_WEIGHT = 2.0


@dataclass(frozen=True)
class QuadrotorParams:
    mass: float = DEFAULT_MASS
    inertia: np.ndarray = field(default_factory=lambda: np.diag(DEFAULT_INERTIA_DIAG))
    gravity: float = GRAVITY
    f_max: float = THRUST_TO_WEIGHT * DEFAULT_MASS * GRAVITY
    tau_max: float = DEFAULT_TAU_MAX

    def __post_init__(self):
        inertia = np.asarray(self.inertia, dtype=float)
        if inertia.shape == (3,):
            inertia = np.diag(inertia)
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise DomainError(f"vehicle mass must be positive, got {self.mass}")
        if inertia.shape != (3, 3) or not np.allclose(inertia, inertia.T):
            raise DomainError("inertia must be a symmetric 3x3 matrix")
        if np.any(np.linalg.eigvalsh(inertia) <= 0):
            raise DomainError("inertia must be positive definite")
        if self.gravity <= 0:
            raise DomainError(f"gravity must be positive, got {self.gravity}")
        if self.f_max <= 0 or self.tau_max <= 0:
            raise DomainError("actuator limits must be positive")
        object.__setattr__(self, 'inertia', inertia)

    @classmethod
    def for_cable(
        cls,
        cable: CableSpec,
        mass: float = DEFAULT_MASS,
        inertia_diag: Sequence[float] = DEFAULT_INERTIA_DIAG,
        f_max: Optional[float] = None,
        tau_max: float = DEFAULT_TAU_MAX,
    ) -> 'QuadrotorParams':
        """Vehicle sized for a cable: f_max defaults to 2 (m + m_C) g."""
        if f_max is None:
            f_max = THRUST_TO_WEIGHT * (mass + cable.mass) * cable.gravity
        return cls(
            mass=mass,
            inertia=np.diag(np.asarray(inertia_diag, dtype=float)),
            gravity=cable.gravity,
            f_max=f_max,
            tau_max=tau_max,
        )

    @property
    def inertia_inv(self) -> np.ndarray:
        return np.linalg.inv(self.inertia)

    @property
    def weight(self) -> float:
        return self.mass * self.gravity


@dataclass(frozen=True)
class QuadrotorState:
    """Position, velocity, attitude (world from body) and body angular rate."""

    x: np.ndarray
    v: np.ndarray
    R: np.ndarray
    omega: np.ndarray

    @classmethod
    def at_rest(cls, position, R: Optional[np.ndarray] = None) -> 'QuadrotorState':
        return cls(
            x=np.asarray(position, dtype=float).copy(),
            v=np.zeros(3),
            R=np.eye(3) if R is None else np.asarray(R, dtype=float).copy(),
            omega=np.zeros(3),
        )

    def as_vector(self) -> np.ndarray:
        return np.concatenate((self.x, self.v, self.R.reshape(-1), self.omega))

    def kinetic_energy(self, params: QuadrotorParams) -> float:
        return 0.5 * params.mass * float(self.v @ self.v) + 0.5 * float(
            self.omega @ params.inertia @ self.omega
        )

    def mechanical_energy(self, params: QuadrotorParams) -> float:
        return self.kinetic_energy(params) + params.weight * float(self.x[2])


@dataclass(frozen=True)
class ControlCommand:
    """Collective thrust in N and body torque in N m."""

    f: float
    tau: np.ndarray

    @classmethod
    def zero(cls) -> 'ControlCommand':
        return cls(0.0, np.zeros(3))

    def clamped(self, params: QuadrotorParams) -> Tuple['ControlCommand', bool]:
        """Command within [0, f_max] and |tau_k| <= tau_max, plus whether it changed."""
        tau = np.asarray(self.tau, dtype=float)
        f = min(max(float(self.f), 0.0), params.f_max)
        tau_clamped = np.clip(tau, -params.tau_max, params.tau_max)
        changed = f != self.f or bool(np.any(tau_clamped != tau))
        if changed:
            logger.debug(
                "Command clamped: f %.4f -> %.4f, tau %s -> %s",
                self.f, f, tau, tau_clamped,
            )
        return ControlCommand(f, tau_clamped), changed
