# catenary_robot/catenary/solver.py
"""Numerical solution of the catenary length constraint.

A cable of length l hanging symmetrically between two supports at half-span
s follows z = a(cosh(r/a) - 1), with the curve parameter a fixed by

    l / 2 = a sinh(s / a)

The equation is transcendental in a; it is solved here by bisection.
Its first and second time derivatives are linear in the derivative of a
once a itself is known and are solved in closed form.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import root_scalar

from catenary_robot.errors import DegenerateGeometry, DomainError, TautCable
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_TOL = 1e-12
# Smallest accepted half-span, as a fraction of the cable length
MIN_SPAN_RATIO = 1e-4
DEGENERACY_THRESHOLD = 1e-12

_BRACKET_LO = 1e-9
_BRACKET_HI = 1e6
_MAX_EXPANSIONS = 64
# Warm-start bracket: relative half-width and how often it may grow
_WARM_WIDTH = 1e-4
_WARM_GROWTHS = 6
_MAX_ITER = 400
_SINH_ARG_LIMIT = 700.0
_MIN_RTOL = 4.0 * np.finfo(float).eps
# Below this s/a the shape coefficient is taken from its Taylor series
_SERIES_LIMIT = 0.05


def _length_residual(a: float, half_length: float, half_span: float) -> float:
    """Relative residual a sinh(s/a) / (l/2) - 1, decreasing in a."""
    x = half_span / a
    if x > _SINH_ARG_LIMIT:
        return math.inf
    return a * math.sinh(x) / half_length - 1.0


def _warm_bracket(
    half_length: float,
    half_span: float,
    guess: float,
) -> Optional[Tuple[float, float]]:
    """Narrow bracket around a nearby solution, or None when it misses the root."""
    width = _WARM_WIDTH
    for _ in range(_WARM_GROWTHS):
        lo = guess / (1.0 + width)
        hi = guess * (1.0 + width)
        if (_length_residual(lo, half_length, half_span) > 0.0
                and _length_residual(hi, half_length, half_span) < 0.0):
            return lo, hi
        width *= 10.0
    return None


def _full_bracket(half_length: float, half_span: float) -> Tuple[float, float]:
    lo = _BRACKET_LO * half_span
    hi = _BRACKET_HI * half_span

    expansions = 0
    while _length_residual(hi, half_length, half_span) > 0.0:
        expansions += 1
        if expansions > _MAX_EXPANSIONS:
            raise TautCable(
                f"no bracket for half-span {half_span} and half-length {half_length}"
            )
        hi *= 2.0
    return lo, hi


def _bisect_parameter(
    half_length: float,
    half_span: float,
    tol: float,
    guess: Optional[float] = None,
) -> float:
    bracket = None
    if guess is not None and math.isfinite(guess) and guess > 0.0:
        bracket = _warm_bracket(half_length, half_span, guess)
    if bracket is None:
        bracket = _full_bracket(half_length, half_span)
    lo, hi = bracket

    result = root_scalar(
        _length_residual,
        args=(half_length, half_span),
        bracket=(lo, hi),
        method='bisect',
        xtol=half_span * 1e-18,
        rtol=max(_MIN_RTOL, tol * 1e-3),
        maxiter=_MAX_ITER,
    )
    if not result.converged:
        raise DegenerateGeometry(f"bisection did not converge: {result.flag}")
    return float(result.root)


def solve_a(length: float, half_span: float, tol: float = DEFAULT_TOL) -> float:
    """Curve parameter a for a cable of the given length and half-span."""
    if not (math.isfinite(length) and length > 0):
        raise DomainError(f"cable length must be positive, got {length}")
    if not (math.isfinite(half_span) and half_span > 0):
        raise DomainError(f"half-span must be positive, got {half_span}")
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if 2.0 * half_span >= length:
        raise TautCable(f"half-span {half_span} leaves no slack on a {length} m cable")
    if half_span < MIN_SPAN_RATIO * length:
        raise DomainError(
            f"half-span {half_span} below the minimum {MIN_SPAN_RATIO * length}"
        )

    a = _bisect_parameter(0.5 * length, half_span, tol)

    residual = abs(2.0 * a * math.sinh(half_span / a) - length) / length
    if residual > tol:
        logger.warning(
            "Length residual %.3e above tolerance %.1e (l=%s, s=%s)",
            residual, tol, length, half_span,
        )
    return a


def shape_coefficient(x: float) -> float:
    """sinh(x) - x cosh(x), the coefficient of the derivatives of a."""
    if abs(x) < _SERIES_LIMIT:
        x2 = x * x
        return -x * x2 * (1.0 / 3.0 + x2 / 30.0 + x2 * x2 / 840.0)
    return math.sinh(x) - x * math.cosh(x)


def solve_a_derivatives(
    a: float,
    half_span: float,
    s_dot: float,
    s_ddot: float,
) -> Tuple[float, float]:
    """First and second time derivatives of a along a span trajectory."""
    if a <= 0:
        raise DomainError(f"curve parameter must be positive, got {a}")

    x = half_span / a
    coeff = shape_coefficient(x)
    if abs(coeff) < DEGENERACY_THRESHOLD:
        raise DegenerateGeometry(
            f"shape coefficient {coeff:.3e} too small at s/a = {x:.3e}"
        )

    cosh_x = math.cosh(x)
    sinh_x = math.sinh(x)

    a_dot = -s_dot * cosh_x / coeff

    u = s_dot - half_span * a_dot / a
    a_ddot = -((u * u / a) * sinh_x + s_ddot * cosh_x) / coeff
    return a_dot, a_ddot


def length_rate_residual(a: float, a_dot: float, s: float, s_dot: float) -> float:
    """First time derivative of the length constraint; zero on a solution."""
    x = s / a
    return (s_dot - s * a_dot / a) * math.cosh(x) + a_dot * math.sinh(x)


def length_accel_residual(
    a: float,
    a_dot: float,
    a_ddot: float,
    s: float,
    s_dot: float,
    s_ddot: float,
) -> float:
    """Second time derivative of the length constraint; zero on a solution."""
    x = s / a
    rate = s_dot / a - s * a_dot / a ** 2
    return (
        a * rate ** 2 * math.sinh(x)
        + 2.0 * a_dot * rate * math.cosh(x)
        + (2.0 * s * a_dot ** 2 / a ** 2 - 2.0 * a_dot * s_dot / a
           - s * a_ddot / a + s_ddot) * math.cosh(x)
        + a_ddot * math.sinh(x)
    )


@dataclass(frozen=True)
class TwoPointSolution:
    """Catenary through two supports at unequal heights.

    Span coordinates run from the first support (at -h/2) to the second
    (at +h/2). ``vertical`` is the height of the first support above the
    second and ``vertex_offset`` the position of the lowest point measured
    from the chord midpoint toward the second support.
    """

    a: float
    vertex_offset: float
    horizontal: float
    vertical: float
    length: float

    @property
    def vertex_inside(self) -> bool:
        return abs(self.vertex_offset) <= 0.5 * self.horizontal

    def arc_lengths(self) -> Tuple[float, float]:
        """Signed cable length from each support down to the vertex."""
        half = 0.5 * self.horizontal
        first = self.a * math.sinh((half + self.vertex_offset) / self.a)
        second = self.a * math.sinh((half - self.vertex_offset) / self.a)
        return first, second

    def drop_from_first(self) -> float:
        """Vertical distance from the first support down to the vertex."""
        half = 0.5 * self.horizontal
        return self.a * (math.cosh((half + self.vertex_offset) / self.a) - 1.0)


def solve_two_point(
    length: float,
    horizontal: float,
    vertical: float,
    tol: float = DEFAULT_TOL,
    guess: Optional[float] = None,
) -> TwoPointSolution:
    """Catenary parameter and vertex offset for supports h apart and v above.

    ``guess`` is a nearby curve parameter, such as the one of the previous
    integration step; it narrows the initial bracket and falls back to the
    full bracket when the root lies outside it.
    """
    if not (math.isfinite(horizontal) and horizontal > 0):
        raise DomainError(f"horizontal separation must be positive, got {horizontal}")
    if not (math.isfinite(length) and length > 0):
        raise DomainError(f"cable length must be positive, got {length}")
    if length * length <= horizontal * horizontal + vertical * vertical:
        raise TautCable(
            f"supports {math.hypot(horizontal, vertical):.6f} m apart on a {length} m cable"
        )

    if vertical == 0.0:
        effective = length
    else:
        effective = math.sqrt((length - vertical) * (length + vertical))

    a = _bisect_parameter(0.5 * effective, 0.5 * horizontal, tol, guess)
    offset = a * math.asinh(vertical / effective)
    return TwoPointSolution(
        a=a,
        vertex_offset=offset,
        horizontal=horizontal,
        vertical=vertical,
        length=length,
    )
