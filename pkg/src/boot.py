"""
Application bootstrapping for the pfg command line.

Configures logging once for the process. Library modules only create named
loggers; the CLI calls ``configure_logging`` before dispatching a command.
"""

import logging
import sys

from src.config import LOG_DATEFMT, LOG_FORMAT, LOG_LEVEL


def configure_logging(level: str | None = None) -> None:
    """
    Configure the root logger to write to stderr.

    Args:
        level (str | None, optional): Log level name. Defaults to LOG_LEVEL.
    """
    logging.basicConfig(
        level=(level or LOG_LEVEL).upper(),
        format=LOG_FORMAT,
        datefmt=LOG_DATEFMT,
        stream=sys.stderr,
        force=True,
    )
    logging.getLogger("pfg").debug("Logging configured")
