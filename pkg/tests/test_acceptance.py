"""Acceptance gate.

 AC1  burst pressures at the reference-model means within 0.01 MPa of the published values
 AC2  10^6-trial failure probabilities within 0.010 of the published values, < 5 s for all five
 AC3  pressure-only model agrees with the normal-CDF oracle within 4 binomial sigma
 AC4  10^5 and 10^6 trial estimates differ by < 0.005
 AC5  standard-deviation sweep endpoints within 0.02; pressure sweeps nondecreasing
 AC6  pressure sensitivity dominates strength sensitivities, with the expected signs
 AC7  byte-identical CLI output for 1, 2 and 8 threads
 AC8  identities: reliability, indicator, strength scaling, Svensson limit, quantile round trip

Each check records one PASS/FAIL line, printed in the pytest terminal summary.
Run alone with ``pytest tests/test_acceptance.py``.
"""

import math
import time

import mpmath
import numpy as np
import pytest

from vesselmc import (
    Criterion,
    DesignSample,
    RunConfig,
    VariableId,
    burst_at_means,
    burst_pressure,
    estimate_all,
    indicator,
    sensitivity_all,
    standard_normal_cdf,
    standard_normal_quantile,
    sweep_std_all,
    table2_path,
)
from vesselmc.cli import main

from conftest import MM, MPA, VERDICTS, make_model

pytestmark = pytest.mark.slow

SEED = 42
M = 10**6

PUBLISHED_BURST = {"faupel": 15.21, "svensson": 15.51, "christopher": 16.49, "zheng": 19.54, "brabin": 13.77}
PUBLISHED_POF = {"faupel": 0.024, "svensson": 0.012, "christopher": 0.001, "zheng": 0.06, "brabin": 0.248}


def verdict(ac, label, ok, detail):
    VERDICTS[(ac, label)] = f"AC{ac} {'PASS' if ok else 'FAIL'}  {label}: {detail}"
    return ok


@pytest.fixture(scope="module")
def table2_runs():
    model = make_model()
    t0 = time.perf_counter()
    full = estimate_all(model, list(Criterion), RunConfig(trials=M, seed=SEED))
    elapsed = time.perf_counter() - t0
    short = estimate_all(model, list(Criterion), RunConfig(trials=10**5, seed=SEED))
    return full, short, elapsed


def test_ac1_burst_pressures():
    model = make_model()
    got = {c.value: burst_at_means(c, model).value / MPA for c in Criterion}
    errs = {k: abs(got[k] - PUBLISHED_BURST[k]) for k in got}
    ok = max(errs.values()) <= 0.01
    verdict(1, "burst pressure at means", ok,
            ", ".join(f"{k} {got[k]:.4f}" for k in got) + f" (max |err| {max(errs.values()):.4f} MPa, tol 0.01)")
    assert ok


def test_ac2_table3_failure_probabilities(table2_runs):
    full, _, elapsed = table2_runs
    errs = {c.value: abs(r.pof - PUBLISHED_POF[c.value]) for c, r in full.items()}
    ok = max(errs.values()) <= 0.010 and elapsed < 5.0
    verdict(2, "failure probabilities, m=1e6", ok,
            ", ".join(f"{c.value} {r.pof:.4f}" for c, r in full.items())
            + f" (max |err| {max(errs.values()):.4f}, tol 0.010; {elapsed:.2f} s, limit 5 s)")
    assert max(errs.values()) <= 0.010
    assert elapsed < 5.0


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0])
def test_ac3_analytic_oracle(sigma):
    model = make_model(po=(13, sigma), sy=(235, 0), su=(375, 0), do=(1000, 0), di=(960, 0))
    res = estimate_all(model, list(Criterion), RunConfig(trials=M, seed=SEED))
    mpmath.mp.dps = 30
    worst = 0.0
    ok = True
    for c, r in res.items():
        pb = burst_at_means(c, model).value
        p = float(mpmath.ncdf((mpmath.mpf(13 * MPA) - pb) / (sigma * MPA)))
        tol = 4 * math.sqrt(p * (1 - p) / M)
        ok &= abs(r.pof - p) < tol
        worst = max(worst, abs(r.pof - p) / tol if tol else 0.0)
    verdict(3, f"normal-CDF oracle, sigma_Po={sigma} MPa", ok, f"worst |err|/tol = {worst:.3f} over 5 criteria")
    assert ok


def test_ac4_convergence(table2_runs):
    full, short, _ = table2_runs
    diffs = {c.value: abs(full[c].pof - short[c].pof) for c in Criterion}
    ok = max(diffs.values()) < 0.005
    verdict(4, "|pof(1e5) - pof(1e6)|", ok,
            ", ".join(f"{k} {v:.5f}" for k, v in diffs.items()) + " (tol 0.005)")
    assert ok


SWEEP_TARGETS = [
    # (criterion, variable, lo, hi, pof at lo, pof at hi); MPa
    (Criterion.ZHENG, VariableId.OPERATING_PRESSURE, 0.25, 3.0, 0.054, 0.101),
    (Criterion.BRABIN, VariableId.OPERATING_PRESSURE, 0.25, 3.0, 0.083, 0.403),
    (Criterion.ZHENG, VariableId.YIELD_STRENGTH, 2.0, 24.0, 0.003, 0.227),
    (Criterion.ZHENG, VariableId.ULTIMATE_STRENGTH, 2.0, 24.0, 0.04, 0.112),
]


@pytest.fixture(scope="module")
def pressure_sweep():
    return sweep_std_all(make_model(), list(Criterion), VariableId.OPERATING_PRESSURE,
                         0.25 * MPA, 3 * MPA, 12, RunConfig(trials=M, seed=SEED))


@pytest.mark.parametrize("c,var,lo,hi,p_lo,p_hi", SWEEP_TARGETS, ids=lambda x: str(x))
def test_ac5_sweep_endpoints(pressure_sweep, c, var, lo, hi, p_lo, p_hi):
    if var is VariableId.OPERATING_PRESSURE:
        pts = pressure_sweep[c].points
    else:
        pts = sweep_std_all(make_model(), [c], var, lo * MPA, hi * MPA, 2, RunConfig(trials=M, seed=SEED))[c].points
    got_lo, got_hi = pts[0][1], pts[-1][1]
    ok = abs(got_lo - p_lo) <= 0.02 and abs(got_hi - p_hi) <= 0.02
    verdict(5, f"sweep {c.value} {var.value} {lo}->{hi}", ok,
            f"{got_lo:.4f}->{got_hi:.4f} vs {p_lo}->{p_hi} (tol 0.02)")
    assert ok


def test_ac5_pressure_sweeps_nondecreasing(pressure_sweep):
    bad = []
    for c, res in pressure_sweep.items():
        for (_, p0, e0), (_, p1, e1) in zip(res.points, res.points[1:]):
            if p1 < p0 - 2 * (e0 + e1):
                bad.append(c.value)
    ok = not bad
    verdict(5, "P_o sweeps nondecreasing", ok, "all five criteria" if ok else f"violations: {bad}")
    assert ok


@pytest.fixture(scope="module")
def sensitivity_grid():
    grid = sensitivity_all(make_model(), list(Criterion),
                           [VariableId.OPERATING_PRESSURE, VariableId.YIELD_STRENGTH, VariableId.ULTIMATE_STRENGTH],
                           0.001, RunConfig(trials=M, seed=SEED))
    return {(s.criterion, s.variable): s.coefficient for s in grid}


@pytest.mark.parametrize("c", list(Criterion), ids=str)
def test_ac6_sensitivity(sensitivity_grid, c):
    a_p = sensitivity_grid[(c, VariableId.OPERATING_PRESSURE)]
    a_y = sensitivity_grid[(c, VariableId.YIELD_STRENGTH)]
    a_u = sensitivity_grid[(c, VariableId.ULTIMATE_STRENGTH)]
    dominant = abs(a_p) > abs(a_y) and abs(a_p) > abs(a_u)
    signs = a_p >= 0 and a_y <= 0 and a_u <= 0
    ok = dominant and signs
    verdict(6, f"sensitivity {c.value}", ok,
            f"per MPa: P_o {a_p * MPA:+.3e}, s_y {a_y * MPA:+.3e}, s_u {a_u * MPA:+.3e}; "
            f"dominance {'ok' if dominant else 'VIOLATED'}, signs {'ok' if signs else 'VIOLATED'}")
    assert dominant
    assert signs


@pytest.mark.parametrize("cmd,config", [
    ("burst", "table2.json"),
    ("estimate", "table2.json"),
    ("sweep", "table2.json"),
    ("sweep", "table2_sweep_yield.json"),
    ("sensitivity", "table2.json"),
])
def test_ac7_thread_determinism(tmp_path, cmd, config):
    cfg = str(table2_path().with_name(config))
    outputs = []
    for threads in (1, 2, 8):
        out = tmp_path / f"t{threads}"
        assert main([cmd, "--config", cfg, "--out", str(out), "--threads", str(threads),
                     "--trials", "200000", "--seed", "7"]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    ok = outputs[0] == outputs[1] == outputs[2] and len(outputs[0]) > 0
    verdict(7, f"{cmd} ({config}) threads 1/2/8", ok, f"{len(outputs[0])} file(s) byte-identical" if ok else "outputs differ")
    assert ok


def test_ac8_reliability_identity(table2_runs):
    full, short, _ = table2_runs
    ok = all(r.reliability == 1 - r.pof and r.reliability + r.pof == 1 for r in (*full.values(), *short.values()))
    verdict(8, "R_f = 1 - P_f", ok, "exact on all reference-model estimates")
    assert ok


def test_ac8_indicator_table():
    table = {-0.5 * MPA: 1, 0.0: 1, 0.3 * MPA: 0}
    ok = all(indicator(g) == v for g, v in table.items())
    verdict(8, "indicator table", ok, "-0.5->1, 0->1, +0.3->0")
    assert ok


def test_ac8_strength_scaling():
    worst = 0.0
    for ratio in (1.0, 1.2, 1.6, 2.5):
        for k in (0.1, 0.5, 2.0, 7.3):
            for c in Criterion:
                a = burst_pressure(c, DesignSample(0, 235 * MPA, 235 * MPA * ratio, 1000 * MM, 960 * MM)).value
                b = burst_pressure(c, DesignSample(0, k * 235 * MPA, k * 235 * MPA * ratio, 1000 * MM, 960 * MM)).value
                worst = max(worst, abs(b / (k * a) - 1))
    ok = worst < 1e-12
    verdict(8, "strength scaling linearity", ok, f"max relative deviation {worst:.1e} (tol 1e-12)")
    assert ok


def test_ac8_svensson_continuity():
    s_y = 235 * MPA
    s_u = s_y * (1 + 1e-9)
    near = burst_pressure(Criterion.SVENSSON, DesignSample(0, s_y, s_u, 1000 * MM, 960 * MM)).value
    limit = s_u * 0.25 / 0.227 * math.log(1000 / 960)
    rel = abs(near / limit - 1)
    ok = rel < 1e-6
    verdict(8, "Svensson r->0 continuity at s_u/s_y = 1+1e-9", ok, f"relative difference {rel:.2e} (tol 1e-6)")
    assert ok


def test_ac8_quantile_round_trip():
    grid = np.linspace(0.001, 0.999, 999)
    worst = max(abs(standard_normal_cdf(standard_normal_quantile(p)) - p) for p in grid)
    ok = worst < 1e-8
    verdict(8, "quantile/CDF round trip", ok, f"max |err| {worst:.1e} (tol 1e-8)")
    assert ok
