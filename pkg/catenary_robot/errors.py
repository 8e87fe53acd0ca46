"""Exceptions raised by the catenary robot toolkit."""


class CatenaryError(Exception):
    """Base class for every error raised by this package"""


class DomainError(CatenaryError, ValueError):
    """Input outside the domain of a geometric operation"""


class TautCable(CatenaryError):
    """The endpoints are too far apart for a hanging cable"""


class DegenerateGeometry(CatenaryError):
    """Geometry where the catenary equations lose rank"""


class SingularQP(CatenaryError):
    """Minimum-snap constraint system is rank deficient"""


class UnknownScenario(CatenaryError, KeyError):
    """No built-in scenario or trajectory with that name"""


class NumericalDivergence(CatenaryError):
    """Simulation state left the numerically meaningful range"""


class DegenerateAttitude(CatenaryError):
    """Desired thrust direction does not define a rotation"""


class EmptyWindow(CatenaryError):
    """Statistics window holds no samples"""


class ChannelError(CatenaryError, ValueError):
    """Unknown trace channel requested for plotting"""


class ScenarioError(CatenaryError, ValueError):
    """Scenario document failed validation"""


class TraceIOError(CatenaryError, OSError):
    """Trace or scenario file could not be read or written"""
