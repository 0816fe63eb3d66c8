from __future__ import annotations

import json
from typing import Literal

from pydantic import BaseModel, Field

Source = Literal["REFERENCE", "DERIVED", "config"]
Scalar = float | int | bool | str | None


class OutputValue(BaseModel):
    """One reported number with its units and provenance.

    ``units`` is a unit expression accepted by ``parse_unit_expr`` (``"1"`` for
    dimensionless values) and is ``None`` only for flags and labels.
    """

    value: Scalar | list[float]
    units: str | None = None
    source: Source = "DERIVED"
    note: str | None = None


class RunReport(BaseModel):
    """Machine-readable result of one CLI command.

    Contains no timestamps, paths or host details so identical runs serialise
    to identical bytes.
    """

    command: str
    inputs: dict[str, Scalar | list[float]] = Field(default_factory=dict)
    outputs: dict[str, OutputValue] = Field(default_factory=dict)
    constants_fingerprint: str
    notes: list[str] = Field(default_factory=list)

    def add(
        self,
        name: str,
        value: Scalar | list[float],
        units: str | None = "1",
        source: Source = "DERIVED",
        note: str | None = None,
    ) -> None:
        """Record an output, keeping insertion order."""
        self.outputs[name] = OutputValue(value=value, units=units, source=source, note=note)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"


class TermCheck(BaseModel):
    """Natural-reduced dimension of one right-hand term and whether it matches."""

    dimension: str
    consistent: bool


class ConsistencyReport(BaseModel):
    """Outcome of comparing an equation's terms; inconsistency is a result, not an error."""

    lhs: str
    terms: list[TermCheck]
    consistent: bool
