import logging
from pathlib import Path


class ColorFormatter(logging.Formatter):
    """Adds colored output for terminal readability."""

    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[37m",  # White
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[41m",  # Red background
    }
    RESET = "\033[0m"

    def format(self, record):
        color = self.COLORS.get(record.levelname, self.RESET)
        msg = super().format(record)
        return f"{color}{msg}{self.RESET}"


LOGGER_NAME = "eigentope"


def get_logger(logger=None) -> logging.Logger:
    """Return ``logger`` or the package logger (unconfigured until setup_logger runs)."""
    return logger if logger is not None else logging.getLogger(LOGGER_NAME)


def _console_level(level: str) -> int:
    if level == "debug":
        return logging.DEBUG
    if level == "silent":
        return logging.ERROR
    return logging.INFO


def _has_file_handler(logger: logging.Logger, path: Path) -> bool:
    return any(
        isinstance(h, logging.FileHandler) and Path(h.baseFilename).resolve() == path
        for h in logger.handlers
    )


def setup_logger(level="normal", log_dir="./logs"):
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    # one console handler; repeated runs only adjust its level
    consoles = [
        h
        for h in logger.handlers
        if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
    ]
    for h in consoles:
        h.setLevel(_console_level(level))
    if not consoles:
        ch = logging.StreamHandler()
        ch.setLevel(_console_level(level))
        ch.setFormatter(ColorFormatter("%(message)s"))
        logger.addHandler(ch)

    # one file handler per resolved log path
    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        path = (log_dir / "eigentope.log").resolve()
        if not _has_file_handler(logger, path):
            fh = logging.FileHandler(path, mode="a", encoding="utf-8")
            fh.setLevel(logging.DEBUG)
            formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
            fh.setFormatter(formatter)
            logger.addHandler(fh)

    return logger
