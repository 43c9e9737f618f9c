"""Command-line interface: ``vesselmc {burst,estimate,sweep,sensitivity}``."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
from pathlib import Path

from .analysis import sensitivity_all, sweep_std_all
from .config import MPA, ConfigError, StudyConfig, load_config, unit_of
from .criteria import burst_at_means
from .engine import estimate_all

THREADS_ENV = "VESSELMC_THREADS"

BURST_HEADER = ["criterion", "burst_pressure_mpa"]
ESTIMATE_HEADER = ["criterion", "trials", "failures", "invalid_samples", "pof", "std_error", "reliability"]
TRACE_HEADER = ["trials", "running_pof"]
SWEEP_HEADER = ["criterion", "variable", "std_dev_si", "std_dev_display", "pof", "std_error"]
SENSITIVITY_HEADER = [
    "criterion", "variable", "base_pof", "delta_cov", "delta_x_si", "pof_increment", "coefficient_per_mpa",
]


class UsageError(Exception):
    pass


def _num(x) -> str:
    # shortest round-trip decimal
    return repr(float(x))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _commit(out_dir: Path, files: dict[str, str]) -> None:
    """Write every file to a temporary name first, then rename them into place."""
    out_dir.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for name, text in files.items():
            tmp = out_dir / f".{name}.tmp"
            tmp.write_text(text, encoding="utf-8", newline="")
            staged.append((tmp, out_dir / name))
    except OSError:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise
    for tmp, final in staged:
        os.replace(tmp, final)


def _print_table(header, rows, stream=None):
    stream = stream or sys.stdout
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) for i, h in enumerate(header)]
    print("  ".join(str(h).ljust(w) for h, w in zip(header, widths)), file=stream)
    for r in rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)), file=stream)


def cmd_burst(study: StudyConfig, threads: int) -> dict[str, str]:
    rows = []
    for c in study.criteria:
        res = burst_at_means(c, study.model)
        rows.append([c.value, f"{res.value / MPA:.2f}" if res.valid else f"invalid:{res.reason.name}"])
    _print_table(BURST_HEADER, rows)
    return {"burst.csv": _csv(BURST_HEADER, rows)}


def cmd_estimate(study: StudyConfig, threads: int) -> dict[str, str]:
    results = estimate_all(study.model, study.criteria, study.run_config(), workers=threads)
    rows = [
        [c.value, r.trials, r.failures, r.invalid_samples, _num(r.pof), _num(r.std_error), _num(r.reliability)]
        for c, r in results.items()
    ]
    files = {"estimate.csv": _csv(ESTIMATE_HEADER, rows)}
    for c, r in results.items():
        files[f"trace_{c.value}.csv"] = _csv(TRACE_HEADER, [[t, _num(p)] for t, p in r.trace])
    report = {
        "config": study.raw,
        "effective": {"trials": study.trials, "seed": study.seed, "chunk_size": study.chunk_size},
        "results": [
            {**{k: v for k, v in dataclasses.asdict(r).items() if k != "trace"},
             "criterion": c.value, "trace": [list(p) for p in r.trace]}
            for c, r in results.items()
        ],
    }
    files["estimate.json"] = json.dumps(report, indent=2) + "\n"
    _print_table(["criterion", "pof", "std_error", "reliability"],
                 [[c.value, f"{r.pof:.6f}", f"{r.std_error:.2e}", f"{r.reliability:.6f}"] for c, r in results.items()])
    return files


def cmd_sweep(study: StudyConfig, threads: int) -> dict[str, str]:
    spec = study.sweep
    if spec is None:
        raise UsageError("the config has no 'sweep' block")
    results = sweep_std_all(study.model, study.criteria, spec.variable, spec.lo_si, spec.hi_si,
                            spec.steps, study.run_config(), workers=threads)
    scale = unit_of(spec.variable)[1]
    rows = [
        [c.value, spec.variable.value, _num(sd), _num(sd / scale), _num(pof), _num(se)]
        for c, res in results.items()
        for sd, pof, se in res.points
    ]
    _print_table(SWEEP_HEADER[:2] + ["std_dev_display", "pof"], [[r[0], r[1], f"{float(r[3]):.4g}", f"{float(r[4]):.6f}"] for r in rows])
    return {"sweep.csv": _csv(SWEEP_HEADER, rows)}


def cmd_sensitivity(study: StudyConfig, threads: int) -> dict[str, str]:
    spec = study.sensitivity
    if spec is None:
        raise UsageError("the config has no 'sensitivity' block")
    grid = sensitivity_all(study.model, study.criteria, spec.variables, spec.delta_cov,
                           study.run_config(), mode=spec.mode, workers=threads)
    # per display unit: MPa for pressures and strengths, mm for diameters
    rows = [
        [s.criterion.value, s.variable.value, _num(s.base_pof), _num(s.delta_cov), _num(s.delta_x),
         _num(s.pof_increment), _num(s.coefficient * unit_of(s.variable)[1])]
        for s in grid
    ]
    _print_table(["criterion", "variable", "base_pof", "pof_increment", "coefficient_per_mpa"],
                 [[r[0], r[1], f"{float(r[2]):.6f}", f"{float(r[5]):+.3e}", f"{float(r[6]):+.3e}"] for r in rows])
    return {"sensitivity.csv": _csv(SENSITIVITY_HEADER, rows)}


COMMANDS = {
    "burst": cmd_burst,
    "estimate": cmd_estimate,
    "sweep": cmd_sweep,
    "sensitivity": cmd_sensitivity,
}


def _u64(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"must be an unsigned 64-bit integer: {text!r}")
    return v


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="vesselmc",
        description="Monte Carlo burst-failure probability of thin-walled cylindrical pressure vessels.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "burst": "burst pressure at mean inputs for each criterion",
        "estimate": "Monte Carlo failure probability, reliability and convergence traces",
        "sweep": "failure probability versus one variable's standard deviation",
        "sensitivity": "finite-difference sensitivity coefficients",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--config", required=True, help="study config (JSON)")
        sp.add_argument("--seed", type=_u64, help="override the config seed")
        sp.add_argument("--trials", type=_positive, help="override the config trial count")
        sp.add_argument("--out", default="out", help="output directory (default: ./out)")
        sp.add_argument("--threads", type=_positive,
                        help=f"worker threads; never changes results (fallback: ${THREADS_ENV}, else 1)")
    return p


def _threads(arg) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(THREADS_ENV)
    if not env:
        return 1
    try:
        return _positive(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{THREADS_ENV}: {exc}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        threads = _threads(args.threads)
        study = load_config(args.config)
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.trials is not None:
            overrides["trials"] = args.trials
        study = dataclasses.replace(study, **overrides)
        files = COMMANDS[args.command](study, threads)
        _commit(Path(args.out), files)
    except ConfigError as exc:
        print(f"vesselmc: config error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"vesselmc {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
