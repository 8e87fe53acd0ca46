"""Top level package for the catenary robot toolkit."""

__version__ = "1.0.0"

from catenary_robot.utils.config import config
from catenary_robot.utils.logger import get_logger

__all__ = [
    "__version__",
    "config",
    "get_logger",
    "run_scenario",
]


def run_scenario(name_or_path, **overrides):
    """Load a scenario, apply overrides and run it."""
    from catenary_robot.harness import load_scenario, run

    return run(load_scenario(name_or_path).with_overrides(**overrides))
