"""Study configuration: strict JSON parsing with unit conversion to SI.

Configs are written in MPa (pressures, strengths) and mm (diameters). Unknown
keys are rejected everywhere. Errors name the offending field by its dotted
path, or the line and column for malformed JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .analysis import VariableId
from .criteria import Criterion
from .engine import RunConfig
from .stochastic import NormalVariable, VesselModel

MPA = 1e6
MM = 1e-3

DEFAULT_SWEEP_STEPS = 12
DEFAULT_DELTA_COV = 0.001


class ConfigError(ValueError):
    pass


def unit_of(var: VariableId) -> tuple[str, float]:
    """Display unit name and its size in SI for a design variable."""
    return ("mm", MM) if VariableId(var).is_length else ("mpa", MPA)


@dataclass(frozen=True)
class SweepSpec:
    variable: VariableId
    lo: float  # display units
    hi: float
    steps: int = DEFAULT_SWEEP_STEPS

    @property
    def lo_si(self) -> float:
        return self.lo * unit_of(self.variable)[1]

    @property
    def hi_si(self) -> float:
        return self.hi * unit_of(self.variable)[1]


@dataclass(frozen=True)
class SensitivitySpec:
    variables: tuple[VariableId, ...]
    delta_cov: float = DEFAULT_DELTA_COV
    mode: str = "mean"


@dataclass(frozen=True)
class StudyConfig:
    model: VesselModel
    criteria: tuple[Criterion, ...]
    trials: int
    seed: int
    chunk_size: int = 2**14
    trace_points: int = 50
    sweep: SweepSpec | None = None
    sensitivity: SensitivitySpec | None = None
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    def run_config(self) -> RunConfig:
        return RunConfig(self.trials, self.seed, self.chunk_size, self.trace_points)


def table2_path() -> Path:
    return Path(str(resources.files("vesselmc") / "data" / "table2.json"))


def _keys(obj, where, required, optional=()):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        allowed = ", ".join(list(required) + list(optional))
        raise ConfigError(f"{where}: unknown key(s) {', '.join(map(repr, unknown))}; allowed: {allowed}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ConfigError(f"{where}: missing required key(s) {', '.join(map(repr, missing))}")


def _number(val, where) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise ConfigError(f"{where}: expected a finite number, got {val!r}")
    return float(val)


def _integer(val, where, minimum) -> int:
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{where}: expected an integer, got {val!r}")
    if val < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}, got {val!r}")
    return val


def _variable(obj, name) -> NormalVariable:
    unit, scale = unit_of(VariableId(name))
    where = f"model.{name}"
    mean_key, std_key = f"mean_{unit}", f"std_{unit}"
    _keys(obj, where, (mean_key, std_key))
    mean = _number(obj[mean_key], f"{where}.{mean_key}")
    std = _number(obj[std_key], f"{where}.{std_key}")
    if mean <= 0:
        raise ConfigError(f"{where}.{mean_key}: must be > 0, got {obj[mean_key]!r}")
    if std < 0:
        raise ConfigError(f"{where}.{std_key}: standard deviation must be >= 0, got {obj[std_key]!r}")
    return NormalVariable(mean * scale, std * scale)


def _model(obj) -> VesselModel:
    names = [v.value for v in VariableId]
    _keys(obj, "model", names)
    parts = {name: _variable(obj[name], name) for name in names}
    d_o, d_i = obj["outer_diameter"]["mean_mm"], obj["inner_diameter"]["mean_mm"]
    if not d_o > d_i:
        raise ConfigError(
            f"model.outer_diameter.mean_mm: must exceed inner_diameter.mean_mm ({d_o!r} <= {d_i!r})"
        )
    s_y, s_u = obj["yield_strength"]["mean_mpa"], obj["ultimate_strength"]["mean_mpa"]
    if s_u < s_y:
        raise ConfigError(
            f"model.ultimate_strength.mean_mpa: must be >= yield_strength.mean_mpa ({s_u!r} < {s_y!r})"
        )
    return VesselModel(**parts)


def _criteria(val) -> tuple[Criterion, ...]:
    if not isinstance(val, list) or not val:
        raise ConfigError(f"criteria: expected a nonempty list of names, got {val!r}")
    out = []
    for i, name in enumerate(val):
        if not isinstance(name, str):
            raise ConfigError(f"criteria[{i}]: expected a string, got {name!r}")
        try:
            c = Criterion.parse(name)
        except ValueError as exc:
            raise ConfigError(f"criteria[{i}]: {exc}") from None
        if c in out:
            raise ConfigError(f"criteria[{i}]: duplicate criterion {name!r}")
        out.append(c)
    return tuple(out)


def _var_name(val, where) -> VariableId:
    if not isinstance(val, str):
        raise ConfigError(f"{where}: expected a variable name, got {val!r}")
    try:
        return VariableId.parse(val)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _sweep(obj) -> SweepSpec:
    _keys(obj, "sweep", ("variable", "lo", "hi"), ("steps",))
    var = _var_name(obj["variable"], "sweep.variable")
    lo = _number(obj["lo"], "sweep.lo")
    hi = _number(obj["hi"], "sweep.hi")
    if lo < 0:
        raise ConfigError(f"sweep.lo: must be >= 0, got {obj['lo']!r}")
    if not lo < hi:
        raise ConfigError(f"sweep.hi: must be greater than sweep.lo ({obj['hi']!r} <= {obj['lo']!r})")
    steps = _integer(obj.get("steps", DEFAULT_SWEEP_STEPS), "sweep.steps", 2)
    return SweepSpec(var, lo, hi, steps)


def _sensitivity(obj) -> SensitivitySpec:
    _keys(obj, "sensitivity", ("variables",), ("delta_cov", "mode"))
    names = obj["variables"]
    if not isinstance(names, list) or not names:
        raise ConfigError(f"sensitivity.variables: expected a nonempty list, got {names!r}")
    vars_ = []
    for i, n in enumerate(names):
        v = _var_name(n, f"sensitivity.variables[{i}]")
        if v in vars_:
            raise ConfigError(f"sensitivity.variables[{i}]: duplicate variable {n!r}")
        vars_.append(v)
    delta = _number(obj.get("delta_cov", DEFAULT_DELTA_COV), "sensitivity.delta_cov")
    if delta <= 0:
        raise ConfigError(f"sensitivity.delta_cov: must be > 0, got {obj.get('delta_cov')!r}")
    mode = obj.get("mode", "mean")
    if mode not in ("mean", "std"):
        raise ConfigError(f"sensitivity.mode: must be 'mean' or 'std', got {mode!r}")
    return SensitivitySpec(tuple(vars_), delta, mode)


def parse_config(text: str) -> StudyConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _keys(doc, "config", ("model", "criteria", "trials", "seed"),
          ("chunk_size", "trace_points", "sweep", "sensitivity"))
    seed = _integer(doc["seed"], "seed", 0)
    if seed >= 2**64:
        raise ConfigError(f"seed: must fit in 64 bits, got {seed!r}")
    return StudyConfig(
        model=_model(doc["model"]),
        criteria=_criteria(doc["criteria"]),
        trials=_integer(doc["trials"], "trials", 1),
        seed=seed,
        chunk_size=_integer(doc.get("chunk_size", 2**14), "chunk_size", 1),
        trace_points=_integer(doc.get("trace_points", 50), "trace_points", 1),
        sweep=_sweep(doc["sweep"]) if "sweep" in doc else None,
        sensitivity=_sensitivity(doc["sensitivity"]) if "sensitivity" in doc else None,
        raw=doc,
    )


def load_config(path) -> StudyConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {str(path)!r}: {exc.strerror}") from None
    return parse_config(text)
