# catenary_robot/control/controller.py
"""Geometric tracking controller of the catenary robot.

Each vehicle computes a desired force from its position and velocity errors
with gravity and cable-tension compensation, turns it into a desired
attitude and a collective thrust, and regulates attitude on SO(3).
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from catenary_robot.catenary.geometry import (
    CableSpec,
    Endpoint,
    TensionMode,
    tension_pair,
)
from catenary_robot.catenary.solver import DEFAULT_TOL
from catenary_robot.constants import E1, E3
from catenary_robot.dynamics.cable import DEFAULT_K_TAUT, CoupledState, cable_forces
from catenary_robot.dynamics.quadrotor import ControlCommand, QuadrotorParams, QuadrotorState
from catenary_robot.errors import DegenerateAttitude, DomainError
from catenary_robot.trajectory.frames import (
    CatenarySetpoint,
    QuadrotorReference,
    setpoint_solution,
    setpoint_to_references,
)
from catenary_robot.utils.logger import get_logger
from catenary_robot.utils.so3 import rot_z, vee

logger = get_logger(__name__)

# Smallest desired force that still defines a thrust direction, N
MIN_FORCE = 1e-6
# Smallest |z_d x heading| that still defines a heading
MIN_HEADING = 1e-6


class GravitySign(str, Enum):
    # CORRECTED compensates weight (+m g e3); INVERTED uses -m g e3 and cannot hover
    CORRECTED = 'corrected'
    INVERTED = 'paper'

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str) and value.lower() == 'inverted':
            return cls.INVERTED
        return None


class TensionSource(str, Enum):
    DESIRED = 'desired'
    MEASURED = 'measured'


@dataclass(frozen=True)
class Gains:
    kp: np.ndarray
    kv: np.ndarray
    k_r: float
    k_omega: float

    def __post_init__(self):
        kp = self._diagonal(self.kp, 'kp')
        kv = self._diagonal(self.kv, 'kv')
        if self.k_r <= 0 or self.k_omega <= 0:
            raise DomainError(f"attitude gains must be positive, got {self.k_r}, {self.k_omega}")
        object.__setattr__(self, 'kp', kp)
        object.__setattr__(self, 'kv', kv)

    @staticmethod
    def _diagonal(value, name: str) -> np.ndarray:
        gain = np.asarray(value, dtype=float)
        if gain.shape == (3,):
            gain = np.diag(gain)
        if gain.shape != (3, 3) or np.any(gain != np.diag(np.diag(gain))):
            raise DomainError(f"{name} must be a 3x3 diagonal matrix")
        if np.any(np.diag(gain) <= 0):
            raise DomainError(f"{name} diagonal must be positive")
        return gain

    @classmethod
    def default(cls, params: QuadrotorParams) -> 'Gains':
        """Kp = 8 m I, Kv = 4 m I, kR = 0.01, kOmega = 0.002."""
        return cls(
            kp=8.0 * params.mass * np.eye(3),
            kv=4.0 * params.mass * np.eye(3),
            k_r=0.01,
            k_omega=0.002,
        )

    @classmethod
    def from_lists(
        cls,
        kp: Sequence[float],
        kv: Sequence[float],
        k_r: float,
        k_omega: float,
    ) -> 'Gains':
        return cls(np.diag(np.asarray(kp, dtype=float)), np.diag(np.asarray(kv, dtype=float)),
                   float(k_r), float(k_omega))


@dataclass(frozen=True)
class TrackingError:
    e_p: np.ndarray
    e_v: np.ndarray

    @classmethod
    def of(cls, ref: QuadrotorReference, state: QuadrotorState) -> 'TrackingError':
        return cls(e_p=ref.position - state.x, e_v=ref.velocity - state.v)

    def squared_norm(self) -> float:
        return float(self.e_p @ self.e_p + self.e_v @ self.e_v)


def desired_force(
    ref: QuadrotorReference,
    state: QuadrotorState,
    gains: Gains,
    params: QuadrotorParams,
    tension: np.ndarray,
    R_c: np.ndarray,
    gravity_sign: GravitySign = GravitySign.CORRECTED,
) -> np.ndarray:
    """Kp e_p + Kv e_v + m x_ddot_d + m g e3 + R_C t_i, world frame."""
    error = TrackingError.of(ref, state)
    sign = 1.0 if GravitySign(gravity_sign) is GravitySign.CORRECTED else -1.0
    return (
        gains.kp @ error.e_p
        + gains.kv @ error.e_v
        + params.mass * ref.acceleration
        + sign * params.weight * E3
        + R_c @ np.asarray(tension, dtype=float)
    )


def desired_attitude(f_d: np.ndarray, psi: float) -> np.ndarray:
    """Rotation whose third axis is along f_d with heading psi."""
    norm = float(np.linalg.norm(f_d))
    if norm < MIN_FORCE:
        raise DegenerateAttitude(f"desired force {norm:.3e} N defines no direction")

    z_d = f_d / norm
    heading = rot_z(psi) @ E1
    y_d = np.cross(z_d, heading)
    y_norm = float(np.linalg.norm(y_d))
    if y_norm < MIN_HEADING:
        raise DegenerateAttitude("thrust direction parallel to heading")
    y_d = y_d / y_norm
    x_d = np.cross(y_d, z_d)
    x_d = x_d / np.linalg.norm(x_d)
    return np.column_stack((x_d, y_d, z_d))


def thrust_projection(f_d: np.ndarray, R_d: np.ndarray, f_max: Optional[float] = None) -> float:
    """f = f_d . (R_d e3), clamped to [0, f_max]."""
    f = float(f_d @ (R_d @ E3))
    upper = np.inf if f_max is None else f_max
    clamped = min(max(f, 0.0), upper)
    if clamped != f:
        logger.debug("Thrust %.4f N clamped to %.4f N", f, clamped)
    return clamped


def attitude_error(R: np.ndarray, R_d: np.ndarray) -> np.ndarray:
    """e_R = 1/2 vee(R_d^T R - R^T R_d)."""
    return 0.5 * vee(R_d.T @ R - R.T @ R_d)


def attitude_torque(
    state: QuadrotorState,
    R_d: np.ndarray,
    gains: Gains,
    params: QuadrotorParams,
) -> np.ndarray:
    """Body torque regulating R to R_d with zero desired rate."""
    omega = state.omega
    tau = (
        -gains.k_r * attitude_error(state.R, R_d)
        - gains.k_omega * omega
        + np.cross(omega, params.inertia @ omega)
    )
    clipped = np.clip(tau, -params.tau_max, params.tau_max)
    if np.any(clipped != tau):
        logger.debug("Torque %s clamped to %s", tau, clipped)
    return clipped


@dataclass(frozen=True)
class VehicleCommand:
    """Command of one vehicle with the intermediate quantities that produced it."""

    command: ControlCommand
    f_d: np.ndarray
    R_d: np.ndarray
    error: TrackingError
    held: bool = False


class QuadrotorController:
    """Per-vehicle controller; keeps the last valid desired attitude."""

    def __init__(
        self,
        params: QuadrotorParams,
        gains: Gains,
        gravity_sign: GravitySign = GravitySign.CORRECTED,
    ):
        self.params = params
        self.gains = gains
        self.gravity_sign = GravitySign(gravity_sign)
        self.last_R_d: Optional[np.ndarray] = None
        self.clamp_count = 0
        self.hold_count = 0

    def compute(
        self,
        ref: QuadrotorReference,
        state: QuadrotorState,
        tension: np.ndarray,
        R_c: np.ndarray,
    ) -> VehicleCommand:
        f_d = desired_force(ref, state, self.gains, self.params, tension, R_c, self.gravity_sign)

        held = False
        try:
            R_d = desired_attitude(f_d, ref.yaw)
        except DegenerateAttitude as e:
            R_d = self.last_R_d if self.last_R_d is not None else state.R
            held = True
            self.hold_count += 1
            logger.warning(f"Holding previous desired attitude: {str(e)}")
        self.last_R_d = R_d

        f = thrust_projection(f_d, R_d)
        tau = attitude_torque(state, R_d, self.gains, self.params)
        command, changed = ControlCommand(f, tau).clamped(self.params)
        if changed:
            self.clamp_count += 1

        return VehicleCommand(
            command=command,
            f_d=f_d,
            R_d=R_d,
            error=TrackingError.of(ref, state),
            held=held,
        )


class CatenaryController:
    """Setpoint in catenary space to commands of both vehicles."""

    def __init__(
        self,
        cable: CableSpec,
        params: QuadrotorParams,
        gains: Optional[Gains] = None,
        tension_mode: TensionMode = TensionMode.CLASSICAL,
        feedforward: bool = True,
        tension_source: TensionSource = TensionSource.DESIRED,
        gravity_sign: GravitySign = GravitySign.CORRECTED,
        k_taut: float = DEFAULT_K_TAUT,
        tol: float = DEFAULT_TOL,
    ):
        self.cable = cable
        self.params = params
        self.gains = gains if gains is not None else Gains.default(params)
        self.tension_mode = TensionMode(tension_mode)
        self.feedforward = feedforward
        self.tension_source = TensionSource(tension_source)
        self.k_taut = k_taut
        self.tol = tol
        self.vehicle_a = QuadrotorController(params, self.gains, gravity_sign)
        self.vehicle_b = QuadrotorController(params, self.gains, gravity_sign)

    @property
    def clamp_count(self) -> int:
        return self.vehicle_a.clamp_count + self.vehicle_b.clamp_count

    def tensions(
        self,
        sp: CatenarySetpoint,
        state: CoupledState,
        R_c: np.ndarray,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Compensation tensions of A and B in the catenary frame."""
        if not self.feedforward:
            return np.zeros(3), np.zeros(3)

        if self.tension_source is TensionSource.MEASURED:
            force_a, force_b = cable_forces(state, self.k_taut, self.tol)
            return -(R_c.T @ force_a), -(R_c.T @ force_b)

        pair = tension_pair(self.cable, setpoint_solution(sp, self.cable, self.tol),
                            self.tension_mode)
        return pair.for_endpoint(Endpoint.A), pair.for_endpoint(Endpoint.B)

    def references(self, sp: CatenarySetpoint) -> Tuple[QuadrotorReference, QuadrotorReference]:
        return setpoint_to_references(sp, self.cable, self.tol)

    def compute(
        self,
        sp: CatenarySetpoint,
        state: CoupledState,
    ) -> Tuple[VehicleCommand, VehicleCommand]:
        ref_a, ref_b = self.references(sp)
        R_c = rot_z(sp.psi)
        t_a, t_b = self.tensions(sp, state, R_c)
        return (
            self.vehicle_a.compute(ref_a, state.quad_a, t_a, R_c),
            self.vehicle_b.compute(ref_b, state.quad_b, t_b, R_c),
        )

    def initial_state(self, sp: CatenarySetpoint, offset=None) -> CoupledState:
        """Vehicles at rest on their references, attitude equal to the desired one."""
        ref_a, ref_b = self.references(sp)
        shift = np.zeros(3) if offset is None else np.asarray(offset, dtype=float)
        at_rest = CoupledState.create(ref_a.position + shift, ref_b.position + shift, self.cable)
        cmd_a, cmd_b = self.compute(sp, at_rest)
        return CoupledState.create(
            at_rest.quad_a.x, at_rest.quad_b.x, self.cable, cmd_a.R_d, cmd_b.R_d,
        )
