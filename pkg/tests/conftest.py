"""Pytest configuration and shared fixtures."""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING

import pytest
from typer.testing import CliRunner

from app.constants import ConstantsTable, default_constants
from app.hydrogen import HydrogenModel

if TYPE_CHECKING:
    from collections.abc import Callable, Generator

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="Re-record tests/golden/*.json instead of comparing against them.",
    )


@pytest.fixture
def runner() -> CliRunner:
    """Provide Typer CLI test runner."""
    return CliRunner()


@pytest.fixture
def temp_config_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Generator[Path, None, None]:
    """Create temporary config directory and patch the constants file location."""
    config_dir = tmp_path / "config"
    config_dir.mkdir(parents=True, exist_ok=True)

    def mock_get_config_paths() -> tuple[Path, Path]:
        return config_dir, config_dir / "constants.conf"

    monkeypatch.setattr("app.constants.get_config_paths", mock_get_config_paths)
    return config_dir


@pytest.fixture
def default_table() -> ConstantsTable:
    """Built-in constants."""
    return default_constants()


@pytest.fixture
def hydrogen_model(default_table: ConstantsTable) -> HydrogenModel:
    """Ground-state model with R_p = 1.4 fm."""
    return HydrogenModel.from_constants(default_table)


def _layout(value):
    """Report with the fingerprint and floats replaced by placeholders; lists of floats keep their length."""
    if isinstance(value, dict):
        return {key: "<fingerprint>" if key == "constants_fingerprint" else _layout(v) for key, v in value.items()}
    if isinstance(value, list):
        if value and all(isinstance(v, float) for v in value):
            return f"<float[{len(value)}]>"
        return [_layout(v) for v in value]
    if isinstance(value, float):
        return "<float>"
    return value


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


@pytest.fixture
def golden(request: pytest.FixtureRequest) -> Callable[[str, bytes], None]:
    """Compare a JSON report's layout with tests/golden/<name>.json.

    Names, units, sources, notes, strings, flags and integers must match
    exactly; float values are pinned by the numeric tests. ``--update-golden``
    re-records the file instead.
    """
    update = request.config.getoption("--update-golden")

    def check(name: str, payload: bytes) -> None:
        path = GOLDEN_DIR / f"{name}.json"
        layout = _dump(_layout(json.loads(payload)))
        if update:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(layout, encoding="utf-8")
            return
        if not path.exists():
            pytest.fail(f"{path.name} is missing; record it with --update-golden")
        expected = _dump(json.loads(path.read_text(encoding="utf-8")))
        assert layout == expected, f"{path.name} differs; rerun with --update-golden if intended"

    return check
