"""
Logging for qcarleson.

Console records go through Rich on stderr so that JSON on stdout stays
clean. Suite checks run on worker threads; the optional daily log file
keeps the thread name of every record.
"""

import functools
import logging
import time
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from ..core.constants import DEFAULT_LOG_LEVEL, VERDICT_ICONS, StatusIcons, Verdict


DEBUG = logging.DEBUG
INFO = logging.INFO
WARNING = logging.WARNING

Level = Union[int, str]


def _as_level(level: Level) -> int:
    """Numeric level from a number or a name such as ``"warning"``."""
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ValueError(f"unknown log level: {level}")
    return value


class CarlesonLogger:
    """
    Process-wide logger shared by the library, the suite runner and the CLI.

    File logging is off unless requested.
    """

    _instance: Optional['CarlesonLogger'] = None
    _initialized: bool = False

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(
        self,
        name: str = "qcarleson",
        level: Level = DEFAULT_LOG_LEVEL,
        log_to_file: bool = False,
        log_dir: Optional[Path] = None,
        verbose: bool = False
    ):
        """
        Args:
            name: Logger name
            level: Console level, numeric or by name
            log_to_file: Keep a daily log file
            log_dir: Directory for log files (default: .qcarleson/logs/)
            verbose: Debug records on the console regardless of level
        """
        if self._initialized:
            return

        self.name = name
        self.level = _as_level(level)
        self.verbose = verbose
        self.logger = logging.getLogger(name)
        self.logger.setLevel(DEBUG)
        self.logger.handlers = []
        self.logger.propagate = False

        self._console = RichHandler(
            console=Console(stderr=True),
            show_time=False,
            show_path=False,
            markup=True,
            rich_tracebacks=True,
            tracebacks_show_locals=verbose
        )
        self._console.setFormatter(logging.Formatter("%(message)s"))
        self.logger.addHandler(self._console)
        self._apply_level()

        self.log_file: Optional[Path] = None
        if log_to_file:
            self.log_file = self._add_file_handler(log_dir)

        self._initialized = True

    def _apply_level(self):
        self._console.setLevel(DEBUG if self.verbose else self.level)

    def _add_file_handler(self, log_dir: Optional[Path]) -> Path:
        log_dir = log_dir or Path.cwd() / ".qcarleson" / "logs"
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / f"qcarleson_{datetime.now().strftime('%Y-%m-%d')}.log"

        handler = logging.FileHandler(log_file, encoding='utf-8')
        handler.setLevel(DEBUG)
        handler.setFormatter(logging.Formatter(
            '%(asctime)s | %(levelname)-8s | %(threadName)s | %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        ))
        self.logger.addHandler(handler)
        return log_file

    def set_verbose(self, verbose: bool):
        """Switch console debug output on, or back to the configured level."""
        self.verbose = verbose
        self._apply_level()

    def debug(self, message: str, *args, **kwargs):
        self.logger.debug(message, *args, **kwargs)

    def info(self, message: str, *args, **kwargs):
        self.logger.info(message, *args, **kwargs)

    def error(self, message: str, *args, **kwargs):
        self.logger.error(message, *args, **kwargs)

    def check(self, check_id: str, verdict: str, detail: str = ""):
        """One line per finished suite check; failures are logged as errors."""
        icon = VERDICT_ICONS.get(verdict, StatusIcons.INFO)
        line = f"{icon} {check_id}: {verdict} {detail}".rstrip()
        if verdict == Verdict.FAIL:
            self.error(line)
        else:
            self.debug(line)


_logger: Optional[CarlesonLogger] = None


def get_logger(
    name: str = "qcarleson",
    verbose: bool = False,
    log_to_file: bool = False
) -> CarlesonLogger:
    """Get or create the global logger instance."""
    global _logger
    if _logger is None:
        _logger = CarlesonLogger(name=name, verbose=verbose, log_to_file=log_to_file)
    return _logger


def setup_logging(
    level: Level = DEFAULT_LOG_LEVEL,
    verbose: bool = False,
    log_to_file: bool = False,
    log_dir: Optional[Path] = None
) -> CarlesonLogger:
    """Configure the global logger from the ``logging`` config section."""
    global _logger
    CarlesonLogger._instance = None
    CarlesonLogger._initialized = False
    _logger = CarlesonLogger(level=level, log_to_file=log_to_file, log_dir=log_dir, verbose=verbose)
    return _logger


def log_operation(operation: str):
    """
    Log entry and exit of a long computation at debug level.

    Usage:
        @log_operation("Building counterexample")
        def build_counterexample(...):
            ...
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger()
            logger.debug(f"Starting: {operation}")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(f"Failed: {operation} - {e}")
                raise
            logger.debug(f"Completed: {operation}")
            return result
        return wrapper
    return decorator


class LogContext:
    """
    Debug records around a block, tagged with key=value context.

    Usage:
        with LogContext(logger, "check ball-gap", seed=7):
            ...
    """

    def __init__(self, logger: CarlesonLogger, operation: str, **context):
        self.logger = logger
        self.operation = operation
        self.context = context
        self.elapsed: Optional[float] = None

    def __enter__(self):
        context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
        self.logger.debug(f"[{self.operation}] Starting ({context_str})")
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self._start
        if exc_type:
            self.logger.error(f"[{self.operation}] Failed after {self.elapsed:.2f}s: {exc_val}")
        else:
            self.logger.debug(f"[{self.operation}] Completed in {self.elapsed:.2f}s")
        return False
