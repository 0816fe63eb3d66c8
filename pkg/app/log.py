"""Logging setup.

Modules log through ``get_logger(__name__)``; the CLI calls
``configure_logging`` once. Records go to stderr through Rich so stdout stays
reserved for reports.
"""

from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "dyncharge"

_stderr = Console(stderr=True)


def get_logger(name: str) -> logging.Logger:
    """Return a logger under the ``dyncharge`` namespace (``app.poisson`` -> ``dyncharge.poisson``)."""
    suffix = name.split(".", 1)[1] if name.startswith("app.") else name
    return logging.getLogger(f"{ROOT_LOGGER}.{suffix}")


def configure_logging(verbose: bool = False) -> None:
    """Install a single RichHandler on the package logger; repeated calls only adjust the level."""
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(console=_stderr, show_time=False, show_path=False, markup=False)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
