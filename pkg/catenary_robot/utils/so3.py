"""Rotation-group helpers shared by the frames, dynamics and control code."""
import math
from typing import Tuple

import numpy as np
from scipy.linalg import polar
from scipy.spatial.transform import Rotation


def hat(v: np.ndarray) -> np.ndarray:
    """Skew-symmetric matrix with hat(v) @ u == cross(v, u)."""
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def vee(m: np.ndarray) -> np.ndarray:
    """Inverse of hat for skew-symmetric input."""
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def rot_z(psi: float) -> np.ndarray:
    c, s = math.cos(psi), math.sin(psi)
    return np.array([
        [c, -s, 0.0],
        [s, c, 0.0],
        [0.0, 0.0, 1.0],
    ])


def expmap(theta: np.ndarray) -> np.ndarray:
    """Rotation matrix exp(hat(theta))."""
    return Rotation.from_rotvec(theta).as_matrix()


def dexp_inv(theta: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """Rate of the body-frame rotation vector for R = R0 exp(hat(theta)).

    Truncated after the second bracket, which keeps a fourth-order
    Runge-Kutta scheme at order four.
    """
    theta_x_omega = np.cross(theta, omega)
    return omega + 0.5 * theta_x_omega + np.cross(theta, theta_x_omega) / 12.0


def project_to_so3(r: np.ndarray) -> np.ndarray:
    """Nearest rotation matrix (polar decomposition)."""
    u, _ = polar(r)
    if np.linalg.det(u) < 0:
        raise ValueError("matrix is not close to a proper rotation")
    return u


def orthonormality_error(r: np.ndarray) -> float:
    return float(np.linalg.norm(r.T @ r - np.eye(3)))


def roll_pitch_yaw(r: np.ndarray) -> Tuple[float, float, float]:
    """Z-Y-X Euler angles (roll, pitch, yaw) in radians."""
    yaw, pitch, roll = Rotation.from_matrix(r).as_euler('ZYX')
    return float(roll), float(pitch), float(yaw)


def wrap_angle(angle: float) -> float:
    """Wrap to [-pi, pi)."""
    return (angle + math.pi) % (2.0 * math.pi) - math.pi
