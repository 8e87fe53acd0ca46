# catenary_robot/utils/__init__.py
"""Light-weight exports for utility helpers."""

from catenary_robot.utils.config import config
from catenary_robot.utils.logger import get_logger

__all__ = [
    "config",
    "get_logger",
]
