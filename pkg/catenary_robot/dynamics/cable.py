# catenary_robot/dynamics/cable.py
"""Quasi-static cable coupling between the two vehicles.

The cable is assumed to take its static catenary shape between the current
endpoint positions at every instant. Endpoints at different heights use the
two-point catenary; a stretched cable is replaced by a stiff spring along
the chord.
"""
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from catenary_robot.catenary.geometry import CableSpec
from catenary_robot.catenary.solver import DEFAULT_TOL, solve_two_point
from catenary_robot.constants import E3
from catenary_robot.dynamics.quadrotor import QuadrotorState
from catenary_robot.errors import DegenerateGeometry, TautCable
from catenary_robot.trajectory.frames import CatenarySetpoint, setpoint_to_references
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_K_TAUT = 500.0
# Horizontal separation below which the cable is treated as hanging straight down
MIN_HORIZONTAL = 1e-6


@dataclass(frozen=True)
class CoupledState:
    quad_a: QuadrotorState
    quad_b: QuadrotorState
    cable: CableSpec
    # Curve parameter of the last force evaluation, seeds the next solve
    a_hint: Optional[float] = field(default=None, compare=False)

    @classmethod
    def create(
        cls,
        x_a,
        x_b,
        cable: CableSpec,
        R_a: Optional[np.ndarray] = None,
        R_b: Optional[np.ndarray] = None,
    ) -> 'CoupledState':
        """Both vehicles at rest at the given positions."""
        return cls(QuadrotorState.at_rest(x_a, R_a), QuadrotorState.at_rest(x_b, R_b), cable)

    @property
    def separation(self) -> float:
        return float(np.linalg.norm(self.quad_a.x - self.quad_b.x))

    @property
    def taut(self) -> bool:
        return self.separation >= self.cable.length


@dataclass(frozen=True)
class LowestPoint:
    """Measured catenary configuration.

    ``clamped`` is set when the curve's vertex lies beyond the lower
    endpoint; x_c is then that endpoint.
    """

    x_c: np.ndarray
    psi: float
    s: float
    clamped: bool = False


def hover_state(
    cable: CableSpec,
    x_c,
    psi: float = 0.0,
    s: float = 0.35,
    tol: float = DEFAULT_TOL,
) -> CoupledState:
    """Vehicles at rest and level at the references of a static setpoint."""
    ref_a, ref_b = setpoint_to_references(CatenarySetpoint.static(x_c, psi, s), cable, tol)
    return CoupledState.create(ref_a.position, ref_b.position, cable)


def _horizontal_chord(x_a: np.ndarray, x_b: np.ndarray) -> Tuple[np.ndarray, float]:
    chord = x_b - x_a
    horizontal = np.array([chord[0], chord[1], 0.0])
    return horizontal, float(np.linalg.norm(horizontal))


def cable_forces_at(
    x_a: np.ndarray,
    x_b: np.ndarray,
    cable: CableSpec,
    k_taut: float = DEFAULT_K_TAUT,
    tol: float = DEFAULT_TOL,
    guess: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """World-frame force the cable exerts on each endpoint."""
    force_a, force_b, _ = forces_and_parameter(x_a, x_b, cable, k_taut, tol, guess)
    return force_a, force_b


def forces_and_parameter(
    x_a: np.ndarray,
    x_b: np.ndarray,
    cable: CableSpec,
    k_taut: float = DEFAULT_K_TAUT,
    tol: float = DEFAULT_TOL,
    guess: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray, Optional[float]]:
    """Cable forces plus the curve parameter solved for them.

    The parameter is None when no catenary was solved (taut, massless or
    vertical hang).
    """
    half_weight = 0.5 * cable.weight * E3
    chord = x_b - x_a
    distance = float(np.linalg.norm(chord))

    if distance >= cable.length:
        # Penalty spring along the chord; the cable weight splits evenly
        pull = k_taut * (distance - cable.length) * chord / distance
        return pull - half_weight, -pull - half_weight, None

    if cable.mass == 0.0:
        return np.zeros(3), np.zeros(3), None

    horizontal, h = _horizontal_chord(x_a, x_b)
    if h < MIN_HORIZONTAL:
        logger.warning(
            "Endpoints horizontally coincident (%.2e m); using vertical hang", h
        )
        return -half_weight, -half_weight.copy(), None

    e_h = horizontal / h
    sol = solve_two_point(cable.length, h, float(x_a[2] - x_b[2]), tol, guess)
    arc_first, arc_second = sol.arc_lengths()
    w = cable.weight_per_length

    force_a = w * sol.a * e_h - w * arc_first * E3
    force_b = -w * sol.a * e_h - w * arc_second * E3
    return force_a, force_b, sol.a


def cable_forces(
    state: CoupledState,
    k_taut: float = DEFAULT_K_TAUT,
    tol: float = DEFAULT_TOL,
) -> Tuple[np.ndarray, np.ndarray]:
    """(F_A, F_B) for a coupled state; see cable_forces_at."""
    return cable_forces_at(state.quad_a.x, state.quad_b.x, state.cable, k_taut, tol,
                           state.a_hint)


def lowest_point_from_state(state: CoupledState, tol: float = DEFAULT_TOL) -> LowestPoint:
    """Vertex position, plane yaw and half-span of the hanging cable."""
    if state.taut:
        raise TautCable(
            f"endpoints {state.separation:.6f} m apart on a {state.cable.length} m cable"
        )

    x_a, x_b = state.quad_a.x, state.quad_b.x
    horizontal, h = _horizontal_chord(x_a, x_b)
    if h < MIN_HORIZONTAL:
        raise DegenerateGeometry(f"endpoints horizontally coincident ({h:.2e} m)")

    # Catenary frame y-axis runs from A to B
    e_h = horizontal / h
    psi = math.atan2(-e_h[0], e_h[1])

    sol = solve_two_point(state.cable.length, h, float(x_a[2] - x_b[2]), tol)
    if not sol.vertex_inside:
        lower = x_a if x_a[2] <= x_b[2] else x_b
        return LowestPoint(x_c=lower.copy(), psi=psi, s=0.5 * h, clamped=True)

    midpoint = 0.5 * (x_a + x_b)
    vertex = midpoint + sol.vertex_offset * e_h
    vertex[2] = x_a[2] - sol.drop_from_first()
    return LowestPoint(x_c=vertex, psi=psi, s=0.5 * h)
