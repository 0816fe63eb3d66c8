"""CLI package entry point.

Importing the submodules registers their commands onto the shared Typer
instance in ``_shared``.
"""

from __future__ import annotations

from collections.abc import Sequence

from . import gravity as _gravity  # noqa: F401
from . import hydrogen as _hydrogen  # noqa: F401
from . import poisson as _poisson  # noqa: F401
from . import proton as _proton  # noqa: F401
from . import systems as _systems  # noqa: F401
from . import units as _units  # noqa: F401
from ._shared import app, console, err_console


def main() -> None:
    """Entry point for the `dyncharge` console script."""
    app()


def dispatch(argv: Sequence[str]) -> int:
    """Run one command line in-process and return its exit code.

    0 on success, 2 when a consistency check fails, 1 on any error.
    """
    try:
        app(args=list(argv), prog_name="dyncharge", standalone_mode=True)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    return 0


__all__ = ["app", "console", "dispatch", "err_console", "main"]


if __name__ == "__main__":
    main()
