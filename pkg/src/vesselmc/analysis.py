"""Standard-deviation sweeps and finite-difference sensitivity coefficients.

Every estimate here reuses the caller's seed, so the base and perturbed runs
(or all sweep points) share common random numbers: the same standard-normal
draws are rescaled to each model. Differences between runs then reflect the
model change rather than sampling noise.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .criteria import Criterion
from .engine import RunConfig, estimate_all
from .stochastic import NormalVariable, VesselModel


class VariableId(str, Enum):
    OPERATING_PRESSURE = "operating_pressure"
    YIELD_STRENGTH = "yield_strength"
    ULTIMATE_STRENGTH = "ultimate_strength"
    OUTER_DIAMETER = "outer_diameter"
    INNER_DIAMETER = "inner_diameter"

    @classmethod
    def parse(cls, name: str) -> VariableId:
        try:
            return cls(name)
        except ValueError:
            valid = ", ".join(v.value for v in cls)
            raise ValueError(f"unknown variable {name!r}; valid names: {valid}") from None

    @property
    def is_length(self) -> bool:
        return self in (VariableId.OUTER_DIAMETER, VariableId.INNER_DIAMETER)

    def of(self, model: VesselModel) -> NormalVariable:
        return getattr(model, self.value)

    def __str__(self):
        return self.value


def replace_variable(model: VesselModel, var: VariableId, mean=None, std_dev=None) -> VesselModel:
    old = VariableId(var).of(model)
    new = NormalVariable(
        old.mean if mean is None else float(mean),
        old.std_dev if std_dev is None else float(std_dev),
    )
    return dataclasses.replace(model, **{VariableId(var).value: new})


def cov(v: NormalVariable) -> float:
    """Coefficient of variation, std_dev / mean."""
    if v.mean == 0:
        raise ValueError("coefficient of variation is undefined for zero mean")
    return v.std_dev / v.mean


@dataclass(frozen=True)
class SweepResult:
    criterion: Criterion
    variable: VariableId
    points: list[tuple[float, float, float]]  # (std_dev, pof, std_error)


def sweep_std_all(
    model: VesselModel,
    criteria: Iterable[Criterion],
    var: VariableId,
    lo: float,
    hi: float,
    steps: int = 12,
    cfg: RunConfig = RunConfig(),
    workers: int = 1,
) -> dict[Criterion, SweepResult]:
    """Sweep one variable's std_dev over ``steps`` evenly spaced values in ``[lo, hi]``."""
    var = VariableId.parse(var)
    if not 0 <= lo < hi:
        raise ValueError(f"sweep requires 0 <= lo < hi, got lo={lo!r}, hi={hi!r}")
    if steps < 2:
        raise ValueError(f"sweep requires at least 2 steps, got {steps!r}")
    crits = [Criterion(c) for c in criteria]
    grid = np.linspace(lo, hi, steps)
    points: dict[Criterion, list] = {c: [] for c in crits}
    for sd in grid:
        res = estimate_all(replace_variable(model, var, std_dev=sd), crits, cfg, workers)
        for c in crits:
            points[c].append((float(sd), res[c].pof, res[c].std_error))
    return {c: SweepResult(c, var, points[c]) for c in crits}


def sweep_std(model, c, var, lo, hi, steps=12, cfg=RunConfig(), workers=1) -> SweepResult:
    return sweep_std_all(model, [c], var, lo, hi, steps, cfg, workers)[Criterion(c)]


@dataclass(frozen=True)
class SensitivityResult:
    criterion: Criterion
    variable: VariableId
    base_pof: float
    perturbed_pof: float
    pof_increment: float
    delta_cov: float
    delta_x: float
    coefficient: float  # per SI unit of the variable
    mode: str = "mean"


def _check_delta(delta_cov):
    if not delta_cov > 0:
        raise ValueError(f"delta_cov must be positive, got {delta_cov!r}")


def _perturb(model, var, delta_cov, mode):
    v = var.of(model)
    if v.mean == 0:
        raise ValueError(f"cannot size a COV increment for {var.value} with zero mean")
    delta_x = delta_cov * v.mean
    if mode == "mean":
        return replace_variable(model, var, mean=v.mean + delta_x), delta_x
    if mode == "std":
        return replace_variable(model, var, std_dev=v.std_dev + delta_x), delta_x
    raise ValueError(f"mode must be 'mean' or 'std', got {mode!r}")


def sensitivity_all(
    model: VesselModel,
    criteria: Sequence[Criterion],
    variables: Sequence[VariableId],
    delta_cov: float = 0.001,
    cfg: RunConfig = RunConfig(),
    mode: str = "mean",
    workers: int = 1,
) -> list[SensitivityResult]:
    """Finite-difference sensitivity grid, ordered criterion-major.

    Each variable's mean (or std_dev, with ``mode="std"``) is raised by
    ``delta_cov * mean`` while everything else is held fixed; the
    coefficient is the resulting change in failure probability per SI unit.
    """
    _check_delta(delta_cov)
    crits = [Criterion(c) for c in criteria]
    vars_ = [VariableId.parse(v) for v in variables]
    if not crits or not vars_:
        raise ValueError("criteria and variables must be nonempty")
    base = estimate_all(model, crits, cfg, workers)
    perturbed = {}
    for var in vars_:
        pm, dx = _perturb(model, var, delta_cov, mode)
        perturbed[var] = (estimate_all(pm, crits, cfg, workers), dx)

    out = []
    for c in crits:
        for var in vars_:
            res, dx = perturbed[var]
            inc = res[c].pof - base[c].pof
            out.append(SensitivityResult(
                criterion=c,
                variable=var,
                base_pof=base[c].pof,
                perturbed_pof=res[c].pof,
                pof_increment=inc,
                delta_cov=delta_cov,
                delta_x=dx,
                coefficient=inc / dx,
                mode=mode,
            ))
    return out


def sensitivity(model, c, var, delta_cov=0.001, cfg=RunConfig(), mode="mean", workers=1) -> SensitivityResult:
    _check_delta(delta_cov)
    return sensitivity_all(model, [c], [var], delta_cov, cfg, mode, workers)[0]
