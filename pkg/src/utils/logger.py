"""
Logging system for the harmonic mapper
Provides rotating file logging and a stderr console handler
"""
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

LOGGER_NAME = "HarmonicMapper"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class Logger:
    """Centralized logging system"""

    def __init__(self, log_dir: Optional[str] = "logs", log_file: str = "harmonic_mapper.log",
                 console_level: str = "WARNING", max_bytes: int = 10 * 1024 * 1024,
                 backup_count: int = 5):
        """
        Initialize logger with file and console handlers

        Args:
            log_dir: directory for the rotating log file; None disables file logging
            log_file: log file name inside log_dir
            console_level: level name for the stderr handler
            max_bytes: rotation size of the log file
            backup_count: number of rotated files kept
        """
        self.log_dir = log_dir
        self.log_file = log_file
        self.console_level = console_level
        self.max_bytes = max_bytes
        self.backup_count = backup_count
        self.logger = None
        self._setup_logger()

    def _setup_logger(self):
        """Setup logging configuration"""
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        # Replace handlers from a previous configuration
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()

        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

        if self.log_dir:
            os.makedirs(self.log_dir, exist_ok=True)
            file_handler = RotatingFileHandler(
                os.path.join(self.log_dir, self.log_file),
                maxBytes=self.max_bytes,
                backupCount=self.backup_count,
                encoding='utf-8'
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

        # stdout carries command output, so the console handler uses stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, str(self.console_level).upper(), logging.WARNING))
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

    def debug(self, message):
        """Log debug message"""
        self.logger.debug(message)

    def info(self, message):
        """Log info message"""
        self.logger.info(message)

    def warning(self, message):
        """Log warning message"""
        self.logger.warning(message)

    def error(self, message):
        """Log error message"""
        self.logger.error(message)

    def log_operation(self, operation, details, success=True):
        """Log an operation with structured format"""
        status = "SUCCESS" if success else "FAILED"
        message = f"[{operation}] {status} - {details}"
        if success:
            self.info(message)
        else:
            self.warning(message)


# Global logger instance
_logger_instance = None


def get_logger() -> Logger:
    """Get global logger instance (console only until configure_logger is called)"""
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = Logger(log_dir=None)
    return _logger_instance


def configure_logger(log_dir: Optional[str] = None, **kwargs) -> Logger:
    """Rebuild the global logger, e.g. from the `logging` config section"""
    global _logger_instance
    _logger_instance = Logger(log_dir=log_dir, **kwargs)
    return _logger_instance
