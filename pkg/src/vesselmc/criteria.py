"""Burst-pressure criteria for unflawed thin-walled cylinders.

Each criterion is available as a scalar function on a :class:`DesignSample`
and as a vectorised kernel on column arrays, which is what the Monte Carlo
engine calls. Inadmissible samples are reported with an :class:`InvalidReason`
instead of raising, so a simulation loop can count them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np

from .stochastic import DesignSample, VesselModel

_TWO_OVER_SQRT3 = 2.0 / math.sqrt(3.0)
_SQRT3 = math.sqrt(3.0)


class Criterion(str, Enum):
    FAUPEL = "faupel"
    SVENSSON = "svensson"
    CHRISTOPHER = "christopher"
    ZHENG = "zheng"  # modified Faupel, Zheng et al.
    BRABIN = "brabin"  # modified Faupel, Brabin et al.

    @classmethod
    def parse(cls, name: str) -> Criterion:
        try:
            return cls(name)
        except ValueError:
            valid = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown criterion {name!r}; valid names: {valid}") from None

    def __str__(self):
        return self.value


class InvalidReason(IntEnum):
    """Why a sample has no burst pressure. Zero is reserved for "valid"."""

    NON_POSITIVE_WALL = 1  # d_o <= d_i (d_o < d_i for Christopher)
    NON_POSITIVE_GEOMETRY = 2  # d_i <= 0
    INVALID_MATERIAL = 3  # s_y <= 0 or s_u < s_y


@dataclass(frozen=True)
class BurstResult:
    value: float | None
    reason: InvalidReason | None = None

    @property
    def valid(self) -> bool:
        return self.reason is None


def strain_hardening_exponent(s_y: float, s_u: float) -> float:
    """``r = 0.224 (s_u/s_y - 1)^0.604``; zero when the strengths coincide."""
    if not s_y > 0:
        raise ValueError(f"yield strength must be positive, got {s_y!r}")
    if s_u < s_y:
        raise ValueError(f"ultimate strength {s_u!r} is below yield strength {s_y!r}")
    return 0.224 * (s_u / s_y - 1.0) ** 0.604


def _hardening(s_y, s_u):
    base = np.maximum(s_u / s_y - 1.0, 0.0)
    return 0.224 * base ** 0.604


def _svensson_shape(r):
    # (e/r)^r -> 1 as r -> 0
    safe = np.where(r > 0.0, r, 1.0)
    power = np.where(r > 0.0, np.exp(r * (1.0 - np.log(safe))), 1.0)
    return 0.25 / (r + 0.227) * power


def _faupel(s_y, s_u, d_o, d_i):
    return _TWO_OVER_SQRT3 * s_y * (2.0 - s_y / s_u) * np.log(d_o / d_i)


def _svensson(s_y, s_u, d_o, d_i):
    return s_u * _svensson_shape(_hardening(s_y, s_u)) * np.log(d_o / d_i)


def _christopher(s_y, s_u, d_o, d_i):
    r = _hardening(s_y, s_u)
    return 2.0 / _SQRT3 ** (r + 1.0) * s_u * (d_o - d_i) / d_i


def _zheng(s_y, s_u, d_o, d_i):
    return 13.21 * s_y * (s_y / s_u) ** 4 * np.log(d_o / d_i)


def _brabin(s_y, s_u, d_o, d_i):
    return _TWO_OVER_SQRT3 * s_y * (1.0 + 0.65 * (1.0 - s_y / s_u)) * np.log(d_o / d_i)


_KERNELS = {
    Criterion.FAUPEL: _faupel,
    Criterion.SVENSSON: _svensson,
    Criterion.CHRISTOPHER: _christopher,
    Criterion.ZHENG: _zheng,
    Criterion.BRABIN: _brabin,
}


def invalid_reasons(c: Criterion, s_y, s_u, d_o, d_i) -> np.ndarray:
    """Per-sample reason codes (0 = admissible). Geometry is checked first."""
    s_y, s_u, d_o, d_i = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in (s_y, s_u, d_o, d_i)))
    thin = d_o < d_i if c is Criterion.CHRISTOPHER else d_o <= d_i
    reasons = np.zeros(s_y.shape, dtype=np.int8)
    reasons[(s_y <= 0.0) | (s_u < s_y)] = InvalidReason.INVALID_MATERIAL
    reasons[thin] = InvalidReason.NON_POSITIVE_WALL
    reasons[d_i <= 0.0] = InvalidReason.NON_POSITIVE_GEOMETRY
    return reasons


def burst_pressure_array(c: Criterion, s_y, s_u, d_o, d_i) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised burst pressure in Pa.

    Returns ``(values, reasons)``; ``values`` is NaN wherever ``reasons`` is
    nonzero.
    """
    reasons = invalid_reasons(c, s_y, s_u, d_o, d_i)
    ok = reasons == 0
    with np.errstate(all="ignore"):
        values = _KERNELS[Criterion(c)](
            np.asarray(s_y, dtype=np.float64), np.asarray(s_u, dtype=np.float64),
            np.asarray(d_o, dtype=np.float64), np.asarray(d_i, dtype=np.float64),
        )
    values = np.where(ok, values, np.nan)
    return values, reasons


def burst_pressure(c: Criterion, s: DesignSample) -> BurstResult:
    values, reasons = burst_pressure_array(c, s.s_y, s.s_u, s.d_o, s.d_i)
    code = int(reasons)
    if code:
        return BurstResult(None, InvalidReason(code))
    return BurstResult(float(values))


def burst_at_means(c: Criterion, model: VesselModel) -> BurstResult:
    return burst_pressure(c, model.means())
