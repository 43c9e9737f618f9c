"""Normal design variables, normal-distribution math and reproducible sampling.

All quantities are SI (Pa for pressures and strengths, m for diameters).
Uniform variates come from numpy's Philox counter-based generator keyed by
``(seed, stream_index)``, so any chunk of a simulation can be regenerated
independently of every other chunk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

_TWO_POW_M53 = 2.0 ** -53
_SQRT1_2 = math.sqrt(0.5)
_U64_MAX = 2**64 - 1

# Wichura (1988), algorithm AS 241 (PPND16). Coefficients lowest order first.
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _horner(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _ppnd16(p: np.ndarray) -> np.ndarray:
    """Vectorised inverse normal CDF; caller guarantees 0 < p < 1."""
    q = p - 0.5
    out = np.empty_like(p)

    central = np.abs(q) <= 0.425
    if central.any():
        qc = q[central]
        r = 0.180625 - qc * qc
        out[central] = qc * _horner(_A, r) / _horner(_B, r)

    tail = ~central
    if tail.any():
        qt = q[tail]
        r = np.sqrt(-np.log(np.where(qt < 0.0, p[tail], 1.0 - p[tail])))
        x = np.empty_like(r)
        near = r <= 5.0
        rn = r[near] - 1.6
        x[near] = _horner(_C, rn) / _horner(_D, rn)
        rf = r[~near] - 5.0
        x[~near] = _horner(_E, rf) / _horner(_F, rf)
        out[tail] = np.where(qt < 0.0, -x, x)
    return out


def standard_normal_quantile(p: float) -> float:
    """Inverse standard normal CDF for ``0 < p < 1``."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"quantile requires 0 < p < 1, got {p!r}")
    return float(_ppnd16(np.array([p], dtype=np.float64))[0])


def standard_normal_cdf(z: float) -> float:
    if not math.isfinite(z):
        raise ValueError(f"cdf requires a finite argument, got {z!r}")
    return 0.5 * math.erfc(-z * _SQRT1_2)


@dataclass(frozen=True)
class NormalVariable:
    """Normal random variable; ``std_dev == 0`` makes it deterministic."""

    mean: float
    std_dev: float

    def __post_init__(self):
        if not (math.isfinite(self.mean) and math.isfinite(self.std_dev)):
            raise ValueError(f"mean and std_dev must be finite, got {self!r}")
        if self.std_dev < 0:
            raise ValueError(f"std_dev must be >= 0, got {self.std_dev!r}")


@dataclass(frozen=True)
class VesselModel:
    """Stochastic description of one vessel design.

    Field order is the sampling order: every trial consumes five uniforms
    assigned to operating pressure, yield strength, ultimate strength, outer
    diameter and inner diameter, in that order.
    """

    operating_pressure: NormalVariable
    yield_strength: NormalVariable
    ultimate_strength: NormalVariable
    outer_diameter: NormalVariable
    inner_diameter: NormalVariable

    def __post_init__(self):
        for f in fields(self):
            if not isinstance(getattr(self, f.name), NormalVariable):
                raise TypeError(f"{f.name} must be a NormalVariable")
        if not self.outer_diameter.mean > self.inner_diameter.mean > 0:
            raise ValueError("require outer_diameter.mean > inner_diameter.mean > 0")
        if not self.ultimate_strength.mean >= self.yield_strength.mean > 0:
            raise ValueError("require ultimate_strength.mean >= yield_strength.mean > 0")
        if not self.operating_pressure.mean > 0:
            raise ValueError("require operating_pressure.mean > 0")

    def variables(self) -> tuple[NormalVariable, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def means(self) -> DesignSample:
        return DesignSample(*(v.mean for v in self.variables()))


@dataclass(frozen=True)
class DesignSample:
    p_o: float
    s_y: float
    s_u: float
    d_o: float
    d_i: float


class RngStream:
    """Sequence of uniforms on the open interval (0, 1), keyed by ``(seed, stream_index)``.

    The stream carries a draw position; two streams with equal keys yield
    the same sequence regardless of how the draws are batched.
    """

    def __init__(self, seed: int, stream_index: int = 0):
        for name, val in (("seed", seed), ("stream_index", stream_index)):
            if not 0 <= int(val) <= _U64_MAX:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {val!r}")
        self._seed = int(seed)
        self._stream_index = int(stream_index)
        self._bitgen = np.random.Philox(key=np.array([self._seed, self._stream_index], dtype=np.uint64))

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def stream_index(self) -> int:
        return self._stream_index

    def uniforms(self, n: int) -> np.ndarray:
        # top 53 bits, shifted half a step off zero: u in [2^-54, 1 - 2^-54]
        raw = self._bitgen.random_raw(n)
        return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_POW_M53

    def next_uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def __repr__(self):
        return f"RngStream(seed={self._seed}, stream_index={self._stream_index})"


def sample_normal(v: NormalVariable, stream: RngStream) -> float:
    z = _ppnd16(stream.uniforms(1))[0]
    return float(v.mean + v.std_dev * z)


def sample_design(model: VesselModel, stream: RngStream) -> DesignSample:
    block = sample_design_block(model, stream, 1)
    return DesignSample(*(float(col[0]) for col in block))


def sample_design_block(model: VesselModel, stream: RngStream, n: int) -> tuple[np.ndarray, ...]:
    """Draw ``n`` design samples as five column arrays ``(p_o, s_y, s_u, d_o, d_i)``.

    Trial ``t`` uses uniforms ``5t .. 5t+4`` of the stream.
    """
    z = standard_normal_block(stream, n)
    return tuple(v.mean + v.std_dev * z[:, k] for k, v in enumerate(model.variables()))


def standard_normal_block(stream: RngStream, n: int) -> np.ndarray:
    """The ``(n, 5)`` standard-normal matrix behind :func:`sample_design_block`."""
    return _ppnd16(stream.uniforms(5 * n)).reshape(n, 5)
