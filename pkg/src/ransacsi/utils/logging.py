r"""Contain utility functions to configure the standard logging
library."""

from __future__ import annotations

__all__ = ["configure_logging", "parse_level"]

import logging

from ransacsi.utils.imports import is_colorlog_available

if is_colorlog_available():  # pragma: no cover
    import colorlog

logger = logging.getLogger(__name__)

PLAIN_FORMAT = "(%(process)d) %(asctime)s [%(levelname)s] %(name)s:%(lineno)s %(message)s"


def parse_level(level: int | str) -> int:
    r"""Convert a logging level name or number to a number.

    Args:
        level: The level name (e.g. ``"info"``) or number.

    Returns:
        The logging level number.

    Raises:
        ValueError: if the level name is unknown.

    Example usage:

    ```pycon

    >>> from ransacsi.utils.logging import parse_level
    >>> parse_level("debug")
    10
    >>> parse_level(30)
    30

    ```
    """
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.upper())
    if not isinstance(value, int):
        msg = f"Unknown logging level: {level}"
        raise ValueError(msg)
    return value


def configure_logging(level: int | str = logging.INFO) -> None:
    r"""Configure the logging module.

    A colored formatter is used if ``colorlog`` is installed.

    Args:
        level: The lower level, as a number or a name.
    """
    level = parse_level(level)
    if not is_colorlog_available():
        logging.basicConfig(level=level, format=PLAIN_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")
        return

    handler = colorlog.StreamHandler()
    handler.setFormatter(
        colorlog.ColoredFormatter(
            fmt=f"%(log_color)s{PLAIN_FORMAT}%(reset)s",
            datefmt="%Y-%m-%d %H:%M:%S",
            log_colors={
                "DEBUG": "cyan",
                "INFO": "green",
                "WARNING": "bold_yellow",
                "ERROR": "red",
                "CRITICAL": "bold_red",
            },
        )
    )
    logging.basicConfig(level=level, handlers=[handler])
