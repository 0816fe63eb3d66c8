"""Physical constants with provenance and a plain-text override file."""

from __future__ import annotations

import hashlib
import math
from pathlib import Path

from platformdirs import user_config_dir
from pydantic import BaseModel, ConfigDict, Field

from .errors import ConstantsError
from .log import get_logger

APP_NAME = "dyncharge"

log = get_logger(__name__)

CODATA = "CODATA 2018"
IAU = "IAU nominal"

DEFAULTS: dict[str, tuple[float, str, str]] = {
    # key: (value, units, provenance)
    "M_e": (9.1093837015e-31, "kg", CODATA),
    "M_p": (1.67262192369e-27, "kg", CODATA),
    "h": (6.62607015e-34, "J s", CODATA),
    "c": (2.99792458e8, "m s^-1", CODATA),
    "N_A": (6.02214076e23, "1", CODATA),
    "eV": (1.602176634e-19, "J", CODATA),
    "nu_H": (6.57e15, "Hz", "dynamic-charge model, hydrogen frequency"),
    "M_E": (5.9722e24, "kg", IAU),
    "R_E": (6.371e6, "m", IAU),
    "R_O": (1.495978707e11, "m", "IAU 2012 astronomical unit"),
    "tau_E": (3.1557e7, "s", "Julian year"),
}
KEYS = tuple(DEFAULTS)
UNITS: dict[str, str] = {key: units for key, (_, units, _) in DEFAULTS.items()} | {"hbar": "J s"}


class ConstantsTable(BaseModel):
    """Immutable table of the constants every computation reads.

    ``hbar`` is derived from ``h`` on access, so ħ = h/2π holds for every
    table, including ones loaded from an override file.
    """

    model_config = ConfigDict(frozen=True)

    M_e: float = Field(gt=0)
    M_p: float = Field(gt=0)
    h: float = Field(gt=0)
    c: float = Field(gt=0)
    N_A: float = Field(gt=0)
    eV: float = Field(gt=0)
    nu_H: float = Field(gt=0)
    M_E: float = Field(gt=0)
    R_E: float = Field(gt=0)
    R_O: float = Field(gt=0)
    tau_E: float = Field(gt=0)
    provenance: dict[str, str] = Field(default_factory=dict)

    @property
    def hbar(self) -> float:
        return self.h / (2 * math.pi)

    def values(self) -> dict[str, float]:
        """Stored values in canonical key order (``hbar`` excluded)."""
        return {key: getattr(self, key) for key in KEYS}

    def serialise(self) -> str:
        return "".join(f"{key} = {value!r}\n" for key, value in self.values().items())

    def fingerprint(self) -> str:
        """SHA-256 of the canonical serialisation; provenance does not contribute."""
        return hashlib.sha256(self.serialise().encode("utf-8")).hexdigest()


def default_constants() -> ConstantsTable:
    return ConstantsTable(
        **{key: value for key, (value, _, _) in DEFAULTS.items()},
        provenance={key: source for key, (_, _, source) in DEFAULTS.items()},
    )


def get_config_paths() -> tuple[Path, Path]:
    """Return the user config directory and the constants override file inside it."""
    cfg_dir = Path(user_config_dir(APP_NAME, appauthor=False))
    return cfg_dir, cfg_dir / "constants.conf"


def _parse_overrides(path: Path) -> dict[str, float]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConstantsError(f"cannot read constants file {path}: {exc.strerror or exc}") from exc

    overrides: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value_text = (part.strip() for part in line.partition("="))
        if not sep or not key or not value_text:
            raise ConstantsError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if key == "hbar":
            raise ConstantsError(f"{path}:{lineno}: 'hbar' is derived from 'h' and cannot be set directly")
        if key not in DEFAULTS:
            raise ConstantsError(f"{path}:{lineno}: unknown constant {key!r}; valid keys: {', '.join(KEYS)}")
        try:
            value = float(value_text)
        except ValueError:
            raise ConstantsError(f"{path}:{lineno}: {value_text!r} is not a number") from None
        if not math.isfinite(value) or value <= 0:
            raise ConstantsError(f"{path}:{lineno}: {key} must be a finite positive number, got {value_text}")
        overrides[key] = value
    return overrides


def load_constants(override_path: Path | None = None) -> ConstantsTable:
    """Defaults merged with the overrides in ``override_path``.

    Every overridden entry's provenance becomes the file path.
    """
    table = default_constants()
    if override_path is None:
        return table
    overrides = _parse_overrides(override_path)
    provenance = dict(table.provenance) | dict.fromkeys(overrides, str(override_path))
    log.info("loaded %d constant override(s) from %s", len(overrides), override_path)
    return table.model_copy(update={**overrides, "provenance": provenance})


def save_constants(table: ConstantsTable, path: Path) -> None:
    """Write ``table`` in the override format; ``load_constants(path)`` reproduces it bit-exactly."""
    path.parent.mkdir(parents=True, exist_ok=True)
    header = "# dyncharge constants (SI magnitudes)\n"
    path.write_text(header + table.serialise(), encoding="utf-8")


def resolve_constants(path: Path | None = None) -> ConstantsTable:
    """Explicit path, else the user config file if present, else defaults."""
    if path is not None:
        return load_constants(path)
    _, user_file = get_config_paths()
    if user_file.exists():
        return load_constants(user_file)
    log.debug("using built-in constants")
    return default_constants()
