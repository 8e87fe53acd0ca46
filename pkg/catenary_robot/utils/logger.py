# catenary_robot/utils/logger.py
import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path

import coloredlogs

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# 保存已创建的日志器
_loggers = {}


def _level_from_env() -> int:
    level_name = os.getenv('LOG_LEVEL', 'INFO').upper()
    level = logging.getLevelName(level_name)
    return level if isinstance(level, int) else logging.INFO


def _file_handler() -> RotatingFileHandler:
    log_dir = Path(os.getenv('LOG_DIR', './logs'))
    log_dir.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(
        log_dir / 'catenary_robot.log',
        maxBytes=int(os.getenv('LOG_MAX_SIZE', '10485760')),
        backupCount=int(os.getenv('LOG_BACKUP_COUNT', '5')),
        encoding='utf-8',
    )
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    return handler


def get_logger(name: str) -> logging.Logger:
    """
    获取指定名称的日志器，避免重复创建
    """
    if name in _loggers:
        return _loggers[name]

    logger = logging.getLogger(name)

    # 如果日志器还没有处理器，才添加处理器
    if not logger.handlers:
        level = _level_from_env()
        logger.setLevel(level)

        console_handler = logging.StreamHandler()
        console_handler.setLevel(level)
        console_handler.setFormatter(coloredlogs.ColoredFormatter(LOG_FORMAT))
        logger.addHandler(console_handler)

        if os.getenv('LOG_TO_FILE', 'false').lower() == 'true':
            logger.addHandler(_file_handler())

        # 阻止日志向上层传递
        logger.propagate = False

    _loggers[name] = logger
    return logger


# Configure package root logger
root_logger = get_logger("catenary_robot")


def log_error(error: Exception, context: str = "") -> None:
    """Log error with context"""
    root_logger.error(f"{context}: {str(error)}", exc_info=True)


def log_warning(message: str) -> None:
    """Log warning message"""
    root_logger.warning(message)


def log_info(message: str) -> None:
    """Log info message"""
    root_logger.info(message)
