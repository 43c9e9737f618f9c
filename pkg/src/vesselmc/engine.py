"""Monte Carlo estimation of burst-failure probability.

Trials are processed in chunks of ``RunConfig.chunk_size``; chunk ``k`` draws
from ``RngStream(seed, k)``. Chunk results are integer counts combined in
chunk order, so the estimate does not depend on how many workers ran them.
All criteria in one call see the same design samples.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .criteria import BurstResult, Criterion, InvalidReason, burst_pressure, burst_pressure_array
from .stochastic import DesignSample, RngStream, VesselModel, standard_normal_block


@dataclass(frozen=True)
class RunConfig:
    trials: int = 1_000_000
    seed: int = 0
    chunk_size: int = 2**14
    trace_points: int = 50

    def __post_init__(self):
        for name in ("trials", "chunk_size", "trace_points"):
            val = getattr(self, name)
            if isinstance(val, bool) or not isinstance(val, (int, np.integer)) or val < 1:
                raise ValueError(f"{name} must be a positive integer, got {val!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class EstimateResult:
    criterion: Criterion
    pof: float
    reliability: float
    trials: int
    failures: int
    invalid_samples: int
    std_error: float
    trace: list[tuple[int, float]] = field(default_factory=list)


def limit_state(c: Criterion, s: DesignSample) -> float | InvalidReason:
    """Safety margin ``g = P_b - P_o`` in Pa, or the reason the sample is invalid."""
    res: BurstResult = burst_pressure(c, s)
    if not res.valid:
        return res.reason
    return res.value - s.p_o


def indicator(g: float | InvalidReason | None) -> int:
    """1 for a failed trial (``g <= 0`` or invalid), else 0."""
    if g is None or isinstance(g, InvalidReason):
        return 1
    return 1 if g <= 0 else 0


def trace_checkpoints(trials: int, points: int) -> np.ndarray:
    """Log-spaced trial counts from ``min(100, trials)`` to ``trials``, inclusive."""
    start = min(100, trials)
    grid = np.unique(np.rint(np.geomspace(start, trials, points)).astype(np.int64))
    grid[-1] = trials
    return grid


def _chunk_bounds(trials: int, chunk_size: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk_size, trials)) for lo in range(0, trials, chunk_size)]


def failure_masks(model: VesselModel, criteria: Sequence[Criterion], z: np.ndarray):
    """Failed / invalid boolean masks for each criterion on one standard-normal block."""
    p_o, s_y, s_u, d_o, d_i = (v.mean + v.std_dev * z[:, k] for k, v in enumerate(model.variables()))
    out = []
    for c in criteria:
        values, reasons = burst_pressure_array(c, s_y, s_u, d_o, d_i)
        invalid = reasons != 0
        with np.errstate(invalid="ignore"):
            failed = invalid | (values - p_o <= 0.0)
        out.append((failed, invalid))
    return out


def _run_chunk(model, criteria, seed, index, lo, hi, checkpoints):
    n = hi - lo
    z = standard_normal_block(RngStream(seed, index), n)
    local = checkpoints[(checkpoints > lo) & (checkpoints <= hi)] - lo - 1
    rows = []
    for failed, invalid in failure_masks(model, criteria, z):
        running = np.cumsum(failed, dtype=np.int64)
        rows.append((int(running[-1]), int(invalid.sum()), running[local]))
    return rows


def _dedupe(criteria: Iterable[Criterion]) -> list[Criterion]:
    out = [Criterion(c) for c in criteria]
    if not out:
        raise ValueError("at least one criterion is required")
    seen = set()
    for c in out:
        if c in seen:
            raise ValueError(f"duplicate criterion {c.value!r}")
        seen.add(c)
    return out


def estimate_all(
    model: VesselModel,
    criteria: Iterable[Criterion],
    cfg: RunConfig,
    workers: int = 1,
) -> dict[Criterion, EstimateResult]:
    """Estimate the failure probability of ``model`` under each criterion.

    ``workers`` only affects wall time; results are bit-identical for any
    value.
    """
    crits = _dedupe(criteria)
    checkpoints = trace_checkpoints(cfg.trials, cfg.trace_points)
    bounds = _chunk_bounds(cfg.trials, cfg.chunk_size)

    def job(item):
        k, (lo, hi) = item
        return _run_chunk(model, crits, cfg.seed, k, lo, hi, checkpoints)

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(job, enumerate(bounds)))
    else:
        chunks = [job(item) for item in enumerate(bounds)]

    m = cfg.trials
    results = {}
    for ci, c in enumerate(crits):
        failures = 0
        invalid = 0
        cum_at_checkpoints = []
        for rows in chunks:
            f, inv, partial = rows[ci]
            cum_at_checkpoints.extend((partial + failures).tolist())
            failures += f
            invalid += inv
        pof = failures / m
        trace = [(int(t), cnt / int(t)) for t, cnt in zip(checkpoints, cum_at_checkpoints)]
        results[c] = EstimateResult(
            criterion=c,
            pof=pof,
            reliability=1.0 - pof,
            trials=m,
            failures=failures,
            invalid_samples=invalid,
            std_error=math.sqrt(pof * (1.0 - pof) / m),
            trace=trace,
        )
    return results


def estimate_pof(model: VesselModel, c: Criterion, cfg: RunConfig, workers: int = 1) -> EstimateResult:
    return estimate_all(model, [c], cfg, workers)[Criterion(c)]
