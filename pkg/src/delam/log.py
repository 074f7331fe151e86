"""
Logging setup for the delam package
"""

import logging
from typing import Union

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(level: Union[int, str] = logging.WARNING) -> logging.Logger:
    """Install a single stream handler on the package logger"""
    logger = logging.getLogger("delam")
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logger.setLevel(level)
    if not any(getattr(h, "_delam", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._delam = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
    return logger
