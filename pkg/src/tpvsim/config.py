"""Run configuration: JSON ingestion, validation, defaults, and hashing.

A run config is a JSON object with optional sections; anything omitted
falls back to the documented default and is echoed into the metadata
sidecar so every artifact records the exact effective parameters.
"""

from __future__ import annotations

import dataclasses
import difflib
import hashlib
import json
from dataclasses import dataclass, field, asdict

from .device import CELL_PRESETS, CellDesign, ThermalEnv
from .economics import EconParams
from .storage import BatterySpec, SCENARIOS

KINDS = ("optics", "cell", "system")
SPACINGS = ("linear", "log")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepAxis:
    """One sweep dimension: a parameter path plus explicit or spaced values."""

    param: str
    values: tuple = ()
    min: float | None = None
    max: float | None = None
    steps: int | None = None
    spacing: str = "linear"

    def __post_init__(self):
        if self.spacing not in SPACINGS:
            raise ConfigError(f"axis spacing must be one of {SPACINGS}")
        if not self.values:
            if self.min is None or self.max is None or self.steps is None:
                raise ConfigError(
                    f"axis {self.param!r} needs either 'values' or min/max/steps")
            if self.steps < 1:
                raise ConfigError("axis steps must be >= 1")

    def grid(self):
        import numpy as np
        if self.values:
            return list(self.values)
        if self.steps == 1:
            return [self.min]
        if self.spacing == "log":
            return list(np.geomspace(self.min, self.max, self.steps))
        return list(np.linspace(self.min, self.max, self.steps))


@dataclass
class RunConfig:
    """Everything needed to run one sweep through the pipeline."""

    kind: str = "system"
    cell_preset: str = "si_default"
    cell: dict = field(default_factory=dict)
    thermal: dict = field(default_factory=dict)
    battery: dict = field(default_factory=dict)
    econ: dict = field(default_factory=dict)
    t_bb_c: float = 1800.0
    t_si_um: float = 50.0
    scenario: str = "full"
    heat_loss: float = 0.1
    grid_points: int = 2000
    sweep: list = field(default_factory=list)
    name: str = "run"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.cell_preset not in CELL_PRESETS:
            raise ConfigError(
                f"unknown cell preset {self.cell_preset!r}; "
                f"choose from {sorted(CELL_PRESETS)}")
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS}")
        if not 0.0 <= self.heat_loss < 1.0:
            raise ConfigError("heat_loss must be in [0, 1)")
        if self.grid_points < 2:
            raise ConfigError("grid_points must be at least 2")
        self.sweep = [a if isinstance(a, SweepAxis) else SweepAxis(**a)
                      for a in self.sweep]

    # -- constructed model objects ---------------------------------------

    def build_cell(self) -> CellDesign:
        base = CELL_PRESETS[self.cell_preset]()
        return dataclasses.replace(base, **self.cell) if self.cell else base

    def build_thermal(self) -> ThermalEnv:
        return ThermalEnv(**self.thermal)

    def build_battery(self, m_si_kg=None, t_h_c=None) -> BatterySpec:
        kw = dict(self.battery)
        kw.setdefault("m_si_kg", 1e5)
        kw.setdefault("t_h_c", self.t_bb_c)
        if m_si_kg is not None:
            kw["m_si_kg"] = m_si_kg
        if t_h_c is not None:
            kw["t_h_c"] = t_h_c
        return BatterySpec(**kw)

    def build_econ(self) -> EconParams:
        return EconParams(**self.econ)

    def effective_params(self) -> dict:
        """Fully resolved parameter record for metadata and hashing."""
        out = {
            "kind": self.kind,
            "cell_preset": self.cell_preset,
            "t_bb_c": self.t_bb_c,
            "t_si_um": self.t_si_um,
            "scenario": self.scenario,
            "heat_loss": self.heat_loss,
            "grid_points": self.grid_points,
            "name": self.name,
            "cell": asdict(self.build_cell()),
            "thermal": asdict(self.build_thermal()),
            "battery": asdict(self.build_battery()),
            "econ": asdict(self.build_econ()),
            "sweep": [asdict(a) for a in self.sweep],
        }
        return out

    def digest(self) -> str:
        blob = json.dumps(self.effective_params(), sort_keys=True,
                          default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


_SECTION_FIELDS = {
    "cell": {f.name for f in dataclasses.fields(CellDesign)},
    "thermal": {f.name for f in dataclasses.fields(ThermalEnv)},
    "battery": {f.name for f in dataclasses.fields(BatterySpec)},
    "econ": {f.name for f in dataclasses.fields(EconParams)},
}
_TOP_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}
_AXIS_FIELDS = {f.name for f in dataclasses.fields(SweepAxis)}


def _suggest(key: str, valid) -> str:
    close = difflib.get_close_matches(key, sorted(valid), n=1)
    return f" (did you mean {close[0]!r}?)" if close else ""


def validate_config(data: dict):
    """Check a config dict; returns (warnings, defaults_applied, config).

    Unknown keys become warnings with a nearest-name suggestion; range and
    type violations raise ConfigError naming the offending field.
    """
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    warnings = []
    clean = {}
    for key, value in data.items():
        if key not in _TOP_FIELDS:
            warnings.append(f"unknown key {key!r}{_suggest(key, _TOP_FIELDS)}")
            continue
        if key in _SECTION_FIELDS and isinstance(value, dict):
            sec_valid = _SECTION_FIELDS[key]
            kept = {}
            for k2, v2 in value.items():
                if k2 not in sec_valid:
                    warnings.append(
                        f"unknown key {key}.{k2!r}{_suggest(k2, sec_valid)}")
                else:
                    kept[k2] = v2
            clean[key] = kept
        elif key == "sweep":
            axes = []
            for i, ax in enumerate(value):
                for k2 in ax:
                    if k2 not in _AXIS_FIELDS:
                        warnings.append(
                            f"unknown key sweep[{i}].{k2!r}"
                            f"{_suggest(k2, _AXIS_FIELDS)}")
                axes.append({k2: v2 for k2, v2 in ax.items()
                             if k2 in _AXIS_FIELDS})
            clean[key] = axes
        else:
            clean[key] = value
    try:
        cfg = RunConfig(**clean)
        cfg.effective_params()  # force construction of every section
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    defaults = sorted(_TOP_FIELDS - set(clean))
    for sec, valid in _SECTION_FIELDS.items():
        given = set(clean.get(sec, {}))
        defaults.extend(f"{sec}.{name}" for name in sorted(valid - given))
    return warnings, defaults, cfg


def load_config(path) -> tuple[list, list, RunConfig]:
    """Parse and validate a JSON config file."""
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc
    return validate_config(data)
