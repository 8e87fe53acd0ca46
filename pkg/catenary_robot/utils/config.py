# catenary_robot/utils/config.py
import os
from pathlib import Path
from typing import Any, Dict

from dotenv import load_dotenv

from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)


def _env_float(key: str, default: float) -> float:
    raw = os.getenv(key)
    if raw is None or raw == '':
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning("Invalid value %r for %s; using default %s", raw, key, default)
        return default


def _env_int(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw == '':
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Invalid value %r for %s; using default %s", raw, key, default)
        return default


class Config:
    def __init__(self):
        """Initialize configuration"""
        # Load environment variables
        load_dotenv()

        self.env = os.getenv('ENV', 'development')

        # Where scenario documents are looked up and traces are written
        self.paths = {
            'scenario_dir': Path(os.getenv('CATENARY_SCENARIO_DIR', './scenarios')),
            'output_dir': Path(os.getenv('CATENARY_OUTPUT_DIR', './runs')),
        }

        self.log_config = {
            'level': os.getenv('LOG_LEVEL', 'INFO'),
            'dir': os.getenv('LOG_DIR', './logs'),
            'to_file': os.getenv('LOG_TO_FILE', 'false').lower() == 'true',
            'max_size': _env_int('LOG_MAX_SIZE', 10485760),  # 10MB
            'backup_count': _env_int('LOG_BACKUP_COUNT', 5),
        }

        # Defaults for newly built scenarios; a scenario document stores its own copy
        self.sim_config = {
            'dt': _env_float('SIM_DT', 0.001),
            'control_hz': _env_float('SIM_CONTROL_HZ', 500.0),
            'log_hz': _env_float('SIM_LOG_HZ', 120.0),
            'stats_from_s': _env_float('SIM_STATS_FROM_S', 5.0),
            'k_taut': _env_float('SIM_K_TAUT', 500.0),
        }

        self.solver_config = {
            'tol': _env_float('SOLVER_TOL', 1e-12),
        }

        self._ensure_defaults()
        self._setup_directories()

    def _ensure_defaults(self) -> None:
        """Replace non-physical settings with safe defaults."""
        defaults = {'dt': 0.001, 'control_hz': 500.0, 'log_hz': 120.0, 'k_taut': 500.0}
        for key, default in defaults.items():
            if self.sim_config[key] <= 0:
                logger.warning("Non-positive sim config '%s'; using default %s", key, default)
                self.sim_config[key] = default

        if self.sim_config['dt'] > 0.5 / self.sim_config['control_hz']:
            logger.warning("SIM_DT exceeds half the control period; using 1 ms")
            self.sim_config['dt'] = min(0.001, 0.5 / self.sim_config['control_hz'])

        if self.solver_config['tol'] <= 0:
            logger.warning("Non-positive SOLVER_TOL; using 1e-12")
            self.solver_config['tol'] = 1e-12

    def _setup_directories(self) -> None:
        """Create necessary directories"""
        dirs = [self.paths['output_dir']]
        if self.log_config['to_file']:
            dirs.append(Path(self.log_config['dir']))

        for dir_path in dirs:
            try:
                dir_path.mkdir(parents=True, exist_ok=True)
            except Exception as e:
                logger.error(f"Failed to create directory {dir_path}: {str(e)}")

    def get_paths(self) -> Dict[str, Path]:
        """Get scenario and output locations"""
        return self.paths

    def get_log_config(self) -> Dict[str, Any]:
        """Get logging configurations"""
        return self.log_config

    def get_sim_config(self) -> Dict[str, float]:
        """Get simulation defaults"""
        return self.sim_config

    def get_solver_config(self) -> Dict[str, float]:
        """Get catenary solver settings"""
        return self.solver_config

    def is_production(self) -> bool:
        """Check if running in production environment"""
        return self.env.lower() == 'production'

    def is_development(self) -> bool:
        """Check if running in development environment"""
        return self.env.lower() == 'development'

    def load(self) -> None:
        """Reload configuration from environment"""
        self.__init__()


# Create global config instance
config = Config()
