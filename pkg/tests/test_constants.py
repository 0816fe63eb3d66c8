"""Tests for the constants table and its override file."""

from __future__ import annotations

import math
from pathlib import Path

import pytest
from pydantic import ValidationError

from app.constants import (
    DEFAULTS,
    KEYS,
    ConstantsTable,
    default_constants,
    get_config_paths,
    load_constants,
    resolve_constants,
    save_constants,
)
from app.errors import ConstantsError
from app.quantity import parse_unit_expr


def test_get_config_paths(temp_config_dir: Path):
    """Test the override file lives inside the config directory."""
    cfg_dir, cfg_file = get_config_paths()

    assert cfg_dir == temp_config_dir
    assert cfg_file.parent == cfg_dir
    assert cfg_file.name == "constants.conf"


def test_default_values_match_table():
    table = default_constants()

    for key, (value, _, source) in DEFAULTS.items():
        assert getattr(table, key) == value
        assert table.provenance[key] == source


def test_default_units_parse():
    """Every declared unit string is a valid unit expression."""
    for _, units, _ in DEFAULTS.values():
        parse_unit_expr(units)


def test_hbar_is_derived_from_h():
    table = default_constants()
    assert table.hbar == pytest.approx(1.0545718176461565e-34, rel=1e-15)
    assert table.hbar == table.h / (2 * math.pi)


def test_table_is_frozen():
    table = default_constants()
    with pytest.raises(ValidationError):
        table.M_e = 1.0


def test_table_rejects_non_positive_values():
    values = default_constants().values() | {"c": 0.0}
    with pytest.raises(ValidationError):
        ConstantsTable(**values)


def test_serialise_uses_canonical_key_order():
    lines = default_constants().serialise().splitlines()
    assert [line.split(" = ")[0] for line in lines] == list(KEYS)


# ---------------------------------------------------------------------------
# fingerprint
# ---------------------------------------------------------------------------


def test_fingerprint_is_stable():
    assert default_constants().fingerprint() == default_constants().fingerprint()
    assert len(default_constants().fingerprint()) == 64


def test_fingerprint_ignores_provenance():
    table = default_constants()
    relabelled = table.model_copy(update={"provenance": {}})
    assert relabelled.fingerprint() == table.fingerprint()


def test_fingerprint_changes_with_a_value():
    table = default_constants()
    assert table.model_copy(update={"nu_H": 6.58e15}).fingerprint() != table.fingerprint()


# ---------------------------------------------------------------------------
# override file
# ---------------------------------------------------------------------------


def test_load_constants_without_file_returns_defaults():
    assert load_constants() == default_constants()


def test_load_constants_applies_overrides(tmp_path: Path):
    path = tmp_path / "c.conf"
    path.write_text("# comment\n\nnu_H = 6.58e15  # trailing\nM_p=1.7e-27\n", encoding="utf-8")

    table = load_constants(path)

    assert table.nu_H == 6.58e15
    assert table.M_p == 1.7e-27
    assert table.M_e == DEFAULTS["M_e"][0]
    assert table.provenance["nu_H"] == str(path)
    assert table.provenance["M_e"] == DEFAULTS["M_e"][2]


def test_save_then_load_is_bit_exact(tmp_path: Path):
    path = tmp_path / "nested" / "c.conf"
    original = default_constants().model_copy(update={"h": 6.62607015e-34 * (1 + 1e-12)})

    save_constants(original, path)
    loaded = load_constants(path)

    assert loaded.values() == original.values()
    assert loaded.fingerprint() == original.fingerprint()


@pytest.mark.parametrize(
    ("content", "message"),
    [
        ("nu_H 6.57e15\n", "expected 'key = value'"),
        ("hbar = 1e-34\n", "derived from 'h'"),
        ("G = 6.67e-11\n", "unknown constant 'G'"),
        ("c = fast\n", "is not a number"),
        ("c = -1\n", "finite positive"),
        ("c = inf\n", "finite positive"),
        ("c = nan\n", "finite positive"),
        ("c = 0\n", "finite positive"),
    ],
)
def test_load_constants_rejects_bad_lines(tmp_path: Path, content: str, message: str):
    path = tmp_path / "bad.conf"
    path.write_text("M_e = 9.1e-31\n" + content, encoding="utf-8")

    with pytest.raises(ConstantsError, match=message) as excinfo:
        load_constants(path)
    assert f"{path}:2" in str(excinfo.value)


def test_unknown_key_message_lists_valid_keys(tmp_path: Path):
    path = tmp_path / "bad.conf"
    path.write_text("G = 1\n", encoding="utf-8")

    with pytest.raises(ConstantsError) as excinfo:
        load_constants(path)
    assert "nu_H" in str(excinfo.value)


def test_load_constants_missing_file(tmp_path: Path):
    with pytest.raises(ConstantsError, match="cannot read"):
        load_constants(tmp_path / "absent.conf")


# ---------------------------------------------------------------------------
# resolve_constants
# ---------------------------------------------------------------------------


def test_resolve_constants_defaults_without_user_file(temp_config_dir: Path):
    assert resolve_constants() == default_constants()


def test_resolve_constants_reads_user_file(temp_config_dir: Path):
    (temp_config_dir / "constants.conf").write_text("nu_H = 6.6e15\n", encoding="utf-8")
    assert resolve_constants().nu_H == 6.6e15


def test_resolve_constants_explicit_path_wins(temp_config_dir: Path, tmp_path: Path):
    (temp_config_dir / "constants.conf").write_text("nu_H = 6.6e15\n", encoding="utf-8")
    explicit = tmp_path / "explicit.conf"
    explicit.write_text("nu_H = 6.5e15\n", encoding="utf-8")

    assert resolve_constants(explicit).nu_H == 6.5e15
