"""Run-config documents: schema, parsing and presets.

A document is TOML (or JSON when it starts with ``{``) with a top-level
``mode`` and the sections ``[array]``, ``[grid]``, ``[drive]`` and
``[output]``. Array keys given at top level are lifted into ``[array]``.
See docs/config-schema.md for the full schema.
"""

from __future__ import annotations

import json
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from importlib import resources
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from arrayeit.core.errors import ConfigError
from arrayeit.core.units import to_gamma_units
from arrayeit.model.array import ArrayConfig

logger = logging.getLogger(__name__)

Mode = Literal["spectrum", "modes", "poles", "lindblad", "darkstate"]
MODES: tuple[str, ...] = ("spectrum", "modes", "poles", "lindblad", "darkstate")

# Mean detuning above which a document is re-centered
CENTERING_TOL = 1e-9

_ARRAY_KEYS = ("n_atoms", "delta_omega", "gamma", "phase", "spacing_multiple", "gamma_reference", "reference_offset")

_PRESET_PACKAGE = "arrayeit.cli"


class ArraySection(BaseModel):
    """Atoms: frequencies, decay rates and positions (as phases)."""

    model_config = ConfigDict(extra="forbid")

    n_atoms: int | None = Field(default=None, ge=0)
    delta_omega: list[float | str] | None = None
    gamma: float | str | list[float | str] = 1.0
    phase: list[float] | None = None
    spacing_multiple: int | None = Field(default=None, ge=1)
    gamma_reference: str | None = None
    reference_offset: float = 0.0

    @model_validator(mode="after")
    def _resolve(self) -> ArraySection:
        ref = self.gamma_reference
        if self.delta_omega is None:
            if self.n_atoms is None:
                raise ValueError("either n_atoms or delta_omega is required")
            self.delta_omega = [0.0] * self.n_atoms
        self.delta_omega = [
            to_gamma_units(v, ref, f"array.delta_omega[{i}]") for i, v in enumerate(self.delta_omega)
        ]
        n = len(self.delta_omega)
        if self.n_atoms is None:
            self.n_atoms = n
        elif self.n_atoms != n:
            raise ValueError(f"n_atoms is {self.n_atoms} but delta_omega has {n} entries")

        if isinstance(self.gamma, list):
            if len(self.gamma) != n:
                raise ValueError(f"gamma has {len(self.gamma)} entries, expected {n}")
            self.gamma = [to_gamma_units(v, ref, f"array.gamma[{i}]") for i, v in enumerate(self.gamma)]
            if any(g <= 0 for g in self.gamma):
                raise ValueError("decay rates must be positive")
        else:
            self.gamma = to_gamma_units(self.gamma, ref, "array.gamma")
            if self.gamma <= 0:
                raise ValueError("decay rates must be positive")

        if self.phase is not None and len(self.phase) != n:
            raise ValueError(f"phase has {len(self.phase)} entries, expected {n}")

        mean = float(np.mean(self.delta_omega)) if n else 0.0
        if abs(mean) > CENTERING_TOL:
            logger.warning("delta_omega has mean %.12g; re-centering to zero mean", mean)
            self.delta_omega = [float(v - mean) for v in self.delta_omega]
            self.reference_offset += mean
        return self


class GridSection(BaseModel):
    """Probe-detuning grid, in the document's frequency frame."""

    model_config = ConfigDict(extra="forbid")

    min: float = -4.0
    max: float = 4.0
    points: int = Field(default=2001, ge=1)

    @model_validator(mode="after")
    def _check_range(self) -> GridSection:
        if self.points > 1 and self.max <= self.min:
            raise ValueError("grid max must exceed min")
        return self

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.points)


class DriveSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alpha2: float = Field(default=0.01, ge=0.0)
    phase: float = 0.0


class OutputSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    path: str | None = None
    format: Literal["csv", "json"] = "csv"


class RunConfig(BaseModel):
    """One validated CLI run."""

    model_config = ConfigDict(extra="forbid")

    mode: Mode = "spectrum"
    array: ArraySection
    grid: GridSection = Field(default_factory=GridSection)
    drive: DriveSection = Field(default_factory=DriveSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="before")
    @classmethod
    def _lift_array_keys(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        flat = {k: data[k] for k in _ARRAY_KEYS if k in data}
        if not flat:
            return data
        data = {k: v for k, v in data.items() if k not in flat}
        section = dict(data.get("array") or {})
        for key, value in flat.items():
            if key in section:
                raise ConfigError(f"array.{key}", "given both at top level and in [array]")
            section[key] = value
        data["array"] = section
        return data

    @field_validator("mode", mode="before")
    @classmethod
    def _normalize_mode(cls, value: Any) -> Any:
        return value.lower() if isinstance(value, str) else value

    def array_config(self) -> ArrayConfig:
        """The physical configuration, centered, with the document mean kept as reference_offset."""
        a = self.array
        freqs = np.asarray(a.delta_omega, dtype=float) + a.reference_offset
        return ArrayConfig.create(
            freqs,
            gamma=a.gamma,
            phase=a.phase,
            spacing_multiple=a.spacing_multiple,
        )


# -----------------------------------------------------------------------------
# Parsing
# -----------------------------------------------------------------------------


def _field_path(loc: tuple[int | str, ...]) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def validate_config(data: dict[str, Any]) -> RunConfig:
    """Validate a decoded document.

    Raises:
        ConfigError: The first schema violation, with its dotted field path.
    """
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        err = e.errors()[0]
        raise ConfigError(_field_path(err["loc"]), err["msg"]) from e


def parse_config(text: str) -> RunConfig:
    """Parse a TOML or JSON run-config document."""
    try:
        data = json.loads(text) if text.lstrip().startswith("{") else tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError("", f"malformed document: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("", "document must be a table")
    return validate_config(data)


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError("", f"cannot read {path}: {e.strerror}") from e
    return parse_config(text)


def list_presets() -> list[str]:
    """Names of the shipped figure-reproduction presets."""
    folder = resources.files(_PRESET_PACKAGE) / "presets"
    return sorted(p.name.removesuffix(".toml") for p in folder.iterdir() if p.name.endswith(".toml"))


def load_preset(name: str) -> RunConfig:
    folder = resources.files(_PRESET_PACKAGE) / "presets"
    resource = folder / f"{name}.toml"
    if not resource.is_file():
        raise ConfigError("", f"unknown preset '{name}'; available: {', '.join(list_presets())}")
    return parse_config(resource.read_text())


def emit_config(rc: RunConfig) -> str:
    """Compact JSON echo of a config; parse_config(emit_config(rc)) == rc."""
    return json.dumps(rc.model_dump(exclude_none=True), separators=(",", ":"))


def with_overrides(rc: RunConfig, **overrides: Any) -> RunConfig:
    """Re-validate rc with per-section overrides such as ``grid={"min": -2}``; None values are skipped."""
    data = rc.model_dump(exclude_none=True)
    for section, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict):
            data[section] = {**data.get(section, {}), **value}
        else:
            data[section] = value
    return validate_config(data)
