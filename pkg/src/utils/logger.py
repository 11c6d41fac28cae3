"""
Structured Logging System for the MFH toolkit
Provides rotating file logs with immediate flush for long sweeps
"""
import logging
from pathlib import Path
from logging.handlers import RotatingFileHandler

import config


class MFHLogger:
    """Centralized logging with rotation and component tags"""

    def __init__(self, name="MFH-Toolkit", log_dir=None, log_level=None):
        """
        Initialize logger with rotating file handlers

        Args:
            name: Logger name
            log_dir: Directory for log files (defaults to config.LOG_DIR)
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        log_level = (log_level or config.LOG_LEVEL).upper()
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, log_level))
        self.logger.propagate = False

        # Clear any existing handlers
        self.logger.handlers.clear()

        log_path = Path(config.get_writable_path(log_dir or config.LOG_DIR))
        self.log_dir = log_path

        log_format = logging.Formatter(
            '[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        # 1. Main rotating file handler
        main_handler = RotatingFileHandler(
            log_path / 'mfh_toolkit.log',
            maxBytes=config.LOG_FILE_MAX_MB * 1024 * 1024,
            backupCount=config.LOG_FILE_BACKUP_COUNT,
            encoding='utf-8'
        )
        main_handler.setLevel(logging.DEBUG)
        main_handler.setFormatter(log_format)
        self.logger.addHandler(main_handler)

        # 2. Error-only log file
        error_handler = RotatingFileHandler(
            log_path / 'errors.log',
            maxBytes=5 * 1024 * 1024,
            backupCount=3,
            encoding='utf-8'
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(log_format)
        self.logger.addHandler(error_handler)

        # 3. Console handler
        if config.LOG_TO_CONSOLE:
            console_handler = logging.StreamHandler()
            console_handler.setLevel(logging.INFO)
            console_handler.setFormatter(log_format)
            self.logger.addHandler(console_handler)

    def debug(self, message, component=""):
        self._log(logging.DEBUG, message, component)

    def info(self, message, component=""):
        self._log(logging.INFO, message, component)

    def warning(self, message, component=""):
        self._log(logging.WARNING, message, component)

    def error(self, message, component="", exc_info=False):
        self._log(logging.ERROR, message, component, exc_info=exc_info)

    def critical(self, message, component="", exc_info=False):
        self._log(logging.CRITICAL, message, component, exc_info=exc_info)

    def _log(self, level, message, component="", exc_info=False):
        """Internal logging method with component prefix"""
        if component:
            message = f"[{component}] {message}"

        self.logger.log(level, message, exc_info=exc_info)

        for handler in self.logger.handlers:
            handler.flush()

    def log_stage(self, stage, detail, elapsed=None):
        """Log completion of a pipeline stage"""
        suffix = f" in {elapsed:.3f}s" if elapsed is not None else ""
        self.info(f"{stage}: {detail}{suffix}", component="Pipeline")

    def log_row(self, qam_order, scheme, qb, effective_qb, evm_percent, passes):
        """Log one sweep row"""
        verdict = "PASS" if passes else "FAIL"
        self.info(
            f"{qam_order}-QAM {scheme} QB={qb} - effective {effective_qb:.4f} QBs, "
            f"EVM {evm_percent:.4f}% [{verdict}]",
            component="Sweep"
        )

    def log_row_error(self, qam_order, scheme, qb, error_message):
        """Log a sweep row that failed without aborting the sweep"""
        self.error(
            f"{qam_order}-QAM {scheme} QB={qb} - {error_message}",
            component="Sweep"
        )

    def log_roundtrip_failure(self, channel, coder, first_mismatch):
        """Log an entropy-coding roundtrip mismatch"""
        self.critical(
            f"Roundtrip mismatch on {channel} stream ({coder}) at codeword index {first_mismatch}",
            component="Roundtrip"
        )


# Global logger instance
_global_logger = None


def get_logger(log_level=None):
    """Get or create global logger instance"""
    global _global_logger
    if _global_logger is None:
        _global_logger = MFHLogger(log_level=log_level)
    return _global_logger
