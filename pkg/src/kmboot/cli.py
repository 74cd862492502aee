"""Command-line front end.

Commands::

    kmboot fit DATA.csv
    kmboot band DATA.csv --alpha 0.05 --B 500 --t1 0 --t2 auto --seed 7
    kmboot gini DATA.csv --alpha 0.05 --B 1000 --seed 7
    kmboot check-conditions DATA.csv
    kmboot simulate SCENARIO.ini

Every command writes one JSON envelope (or a CSV table with ``--format csv``).
Exit codes: 0 success, 2 validation error, 3 degenerate bootstrap.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import re
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .bands import BootstrapDegenerateError, gini_interval, lorenz_band, mrl_band, suggest_t2
from .bootstrap import ResamplePlan
from .covariance import censoring_diagnostic, sigma2_hat
from .estimators import ObservedSample, km_fit
from .simlab import (
    DataModel,
    Law,
    coverage_experiment,
    gamma_consistency_sweep,
    generate,
    gill_bound_check,
    jump_inequality_check,
)

__all__ = ["IngestError", "RunConfig", "ingest", "run", "main", "SCHEMA_PATH"]

SCHEMA_PATH = Path(__file__).with_name("schema") / "output.schema.json"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3


class IngestError(ValueError):
    """Malformed input file; the message names the offending line."""


def ingest(path: str | Path) -> ObservedSample:
    """Read a ``time,status`` CSV (status 1 = event, 0 = censored).

    Lines starting with ``#`` and blank lines are skipped. Duplicate times are
    accepted with a warning.
    """
    path = Path(path)
    times: list[float] = []
    status: list[bool] = []
    header_seen = False
    with path.open(newline="", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            row = next(csv.reader([stripped]))
            row = [c.strip() for c in row]
            if not header_seen:
                if [c.lower() for c in row] != ["time", "status"]:
                    raise IngestError(f"line {lineno}: expected header 'time,status', got {stripped!r}")
                header_seen = True
                continue
            if len(row) != 2:
                raise IngestError(f"line {lineno}: expected 2 fields, got {len(row)}")
            try:
                t = float(row[0])
            except ValueError:
                raise IngestError(f"line {lineno}: time {row[0]!r} is not a number") from None
            if not math.isfinite(t) or t <= 0:
                raise IngestError(f"line {lineno}: times strictly positive and finite required, got {row[0]!r}")
            if row[1] not in ("0", "1"):
                raise IngestError(f"line {lineno}: unknown status {row[1]!r} (expected 0 or 1)")
            times.append(t)
            status.append(row[1] == "1")
    if not times:
        raise IngestError(f"{path}: empty file (no data rows)")
    sample = ObservedSample(np.array(times), np.array(status))
    n_unique = np.unique(sample.time).size
    if n_unique < sample.n:
        warnings.warn(
            f"{sample.n - n_unique} duplicate time(s); ties resolved with events before censorings",
            UserWarning,
            stacklevel=2,
        )
    return sample


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    alpha: float = 0.05
    B: int = 1000
    seed: int | None = None
    t1: float = 0.0
    t2: float | str | None = None
    output: str | None = None
    format: str = "json"
    kind: str = "mrl"
    p_grid: int = 101
    t2_threshold: float = 0.05

    def validate(self) -> None:
        if self.command not in ("fit", "band", "gini", "simulate", "check-conditions"):
            raise ValueError(f"unknown command {self.command!r}")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.B < 1:
            raise ValueError("B must be at least 1")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if isinstance(self.t2, (int, float)) and self.t1 > self.t2:
            raise ValueError("t1 must not exceed t2")
        if self.t1 < 0:
            raise ValueError("t1 must be non-negative")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")


def _json_safe(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def _fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy) % 2**64


def _step_table(f) -> dict:
    return {"initial_value": f.initial_value, "rows": f.to_records()}


# --- commands --------------------------------------------------------------

def _cmd_fit(cfg: RunConfig, env: dict) -> tuple[dict, list[dict]]:
    sample = ingest(cfg.input)
    fit = km_fit(sample)
    env["n"] = fit.n
    tables = {
        "km": fit.km,
        "na": fit.na,
        "censor_km": fit.censor_km,
        "sigma2": sigma2_hat(fit),
    }
    result = {name: _step_table(f) for name, f in tables.items()}
    result["largest_time"] = fit.largest_time
    rows = [{"function": name, **r} for name, f in tables.items() for r in f.to_records()]
    return result, rows


def _cmd_band(cfg: RunConfig, env: dict) -> tuple[dict, list[dict]]:
    sample = ingest(cfg.input)
    fit = km_fit(sample)
    plan = ResamplePlan(env["seed"], cfg.B)
    env["n"] = fit.n
    extra: dict[str, Any] = {}
    if cfg.kind == "lorenz":
        band = lorenz_band(sample, cfg.alpha, plan, cfg.p_grid, fit=fit)
    else:
        t2 = cfg.t2
        if t2 is None or t2 == "auto":
            t2 = suggest_t2(fit, cfg.t2_threshold)
            print(f"t2 auto-selected: {t2!r}", file=sys.stderr)
            extra["t2_auto"] = True
        else:
            extra["t2_auto"] = False
        if cfg.t1 > float(t2):
            raise ValueError("t1 must not exceed t2")
        band = mrl_band(sample, cfg.t1, float(t2), cfg.alpha, plan, fit=fit)
        extra.update(t1=cfg.t1, t2=float(t2))
    env["B_dropped"] = band.replicates_dropped
    result = {**band.to_dict(), "q": band.distribution.quantile(cfg.alpha), **extra}
    rows = [
        {"t": t, "center": c, "center_left": cl, "lower": lo, "upper": up}
        for t, c, cl, lo, up in zip(band.grid, band.center, band.center_left, band.lower, band.upper)
    ]
    return result, rows


def _cmd_gini(cfg: RunConfig, env: dict) -> tuple[dict, list[dict]]:
    sample = ingest(cfg.input)
    fit = km_fit(sample)
    env["n"] = fit.n
    ci = gini_interval(sample, cfg.alpha, ResamplePlan(env["seed"], cfg.B), fit=fit)
    env["B_dropped"] = ci.replicates_dropped
    result = {**ci.to_dict(), "q": ci.quantile_used * math.sqrt(fit.n)}
    return result, [{"estimate": ci.estimate, "lower": ci.lower, "upper": ci.upper}]


def _cmd_check(cfg: RunConfig, env: dict) -> tuple[dict, list[dict]]:
    sample = ingest(cfg.input)
    fit = km_fit(sample)
    env["n"] = fit.n
    diags = [censoring_diagnostic(fit, 0.0, p) for p in (1, 3)]
    result = {f"power_{d.power}": d.to_dict() for d in diags}
    return result, [d.to_dict() for d in diags]


_LAW_RE = re.compile(r"^\s*(\w+)\s*(?:\(([^)]*)\))?\s*$")


def _parse_law(text: str) -> Law | None:
    m = _LAW_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse law {text!r}")
    name, args = m.group(1).lower(), m.group(2)
    if name == "none":
        return None
    params = tuple(float(a) for a in args.split(",")) if args and args.strip() else ()
    return Law(name, params)


def _cmd_simulate(cfg: RunConfig, env: dict) -> tuple[dict, list[dict]]:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(cfg.input, encoding="utf-8")
    if not read:
        raise ValueError(f"cannot read scenario file {cfg.input!r}")
    if "scenario" not in parser:
        raise ValueError("scenario file needs a [scenario] section")
    sc = parser["scenario"]
    experiment = sc.get("experiment", "coverage")
    survival = _parse_law(sc.get("survival", "uniform(0, 1)"))
    if survival is None:
        raise ValueError("survival law is required")
    model = DataModel(survival, _parse_law(sc.get("censoring", "none")))
    # precedence: --seed, then the scenario's seed, then a fresh reported seed
    if env["seed"] is None:
        if "seed" in sc:
            env["seed"] = sc.getint("seed")
        else:
            env["seed"] = _fresh_seed()
            print(f"seed: {env['seed']}", file=sys.stderr)
    seed = env["seed"]
    B = sc.getint("B", fallback=cfg.B)
    alpha = sc.getfloat("alpha", fallback=cfg.alpha)
    env["B"], env["alpha"] = B, alpha
    if experiment == "coverage":
        t2 = sc.get("t2")
        report = coverage_experiment(
            model, sc.getint("n"), B, alpha, sc.get("band_kind", "mrl"), sc.getint("reps", fallback=100),
            seed, t1=sc.getfloat("t1", fallback=0.0), t2=None if t2 is None else float(t2),
            p_grid_resolution=sc.getint("p_grid", fallback=101),
        )
        env["n"] = sc.getint("n")
    elif experiment == "gamma_sweep":
        n_list = [int(x) for x in sc.get("n_list", "100, 400, 1600").split(",")]
        report = gamma_consistency_sweep(model, n_list, B, seed, reps=sc.getint("reps", fallback=20))
    elif experiment == "gill":
        n = sc.getint("n", fallback=50)
        betas = [float(x) for x in sc.get("betas", "0.2, 0.5, 0.8").split(",")]
        report = gill_bound_check(generate(model, n, seed), ResamplePlan(seed, B), betas)
        env["n"] = n
    elif experiment == "jump_inequality":
        report = jump_inequality_check(sc.getint("trials", fallback=10000), seed)
    else:
        raise ValueError(f"unknown experiment {experiment!r}")
    result = report.to_dict()
    result["experiment"] = experiment
    flat = {k: v for k, v in report.summary.items() if not isinstance(v, (dict, list))}
    return result, report.outcomes or [flat]


_COMMANDS = {
    "fit": _cmd_fit,
    "band": _cmd_band,
    "gini": _cmd_gini,
    "check-conditions": _cmd_check,
    "simulate": _cmd_simulate,
}
_RANDOMIZED = {"band", "gini", "simulate"}


def _render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        fields = list(dict.fromkeys(k for r in rows for k in r))
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (repr(float(v)) if isinstance(v, (float, np.floating)) else v)
                             for k, v in r.items()})
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns ``(exit_code, rendered_output)``."""
    randomized = cfg.command in _RANDOMIZED
    env: dict[str, Any] = {
        "command": cfg.command,
        "seed": None,
        "n": None,
        "alpha": cfg.alpha if cfg.command in ("band", "gini") else None,
        "B": cfg.B if cfg.command in ("band", "gini") else None,
        "B_dropped": None,
        "warnings": [],
        "result": None,
    }
    rows: list[dict] = []
    code = EXIT_OK
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            cfg.validate()
            if cfg.seed is not None:
                env["seed"] = int(cfg.seed) if randomized else None
            elif randomized and cfg.command != "simulate":
                env["seed"] = _fresh_seed()
                print(f"seed: {env['seed']}", file=sys.stderr)
            result, rows = _COMMANDS[cfg.command](cfg, env)
            env["result"] = result
        except BootstrapDegenerateError as exc:
            code = EXIT_DEGENERATE
            env["error"] = {"code": "bootstrap_degenerate", "message": str(exc)}
        except (ValueError, OSError) as exc:
            code = EXIT_VALIDATION
            env["error"] = {"code": "validation_error", "message": str(exc)}
    env["warnings"] = [str(w.message) for w in caught]
    if cfg.format == "csv" and code == EXIT_OK:
        return code, _render_csv(rows)
    return code, json.dumps(_json_safe(env), indent=2) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmboot", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, randomized: bool):
        sp.add_argument("input", help="input CSV (time,status) or scenario file")
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if randomized:
            sp.add_argument("--seed", type=int, help="RNG seed; generated and reported if omitted")
            sp.add_argument("--alpha", type=float, default=0.05)
            sp.add_argument("--B", type=int, default=1000, help="bootstrap replicates")

    common(sub.add_parser("fit", help="Kaplan-Meier, Nelson-Aalen, censoring KM and sigma^2 tables"), False)
    band = sub.add_parser("band", help="bootstrap confidence band (MRL or Lorenz)")
    common(band, True)
    band.add_argument("--kind", choices=("mrl", "lorenz"), default="mrl")
    band.add_argument("--t1", type=float, default=0.0)
    band.add_argument("--t2", default="auto", help="upper band limit or 'auto'")
    band.add_argument("--t2-threshold", type=float, default=0.05,
                      help="KM level used by --t2 auto")
    band.add_argument("--p-grid", type=int, default=101, help="Lorenz band grid size")
    common(sub.add_parser("gini", help="bootstrap confidence interval for the Gini index"), True)
    common(sub.add_parser("check-conditions", help="censoring condition diagnostics"), False)
    common(sub.add_parser("simulate", help="run a simulation scenario file"), True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    t2 = getattr(args, "t2", None)
    if t2 is not None and t2 != "auto":
        try:
            t2 = float(t2)
        except ValueError:
            print("--t2 must be a number or 'auto'", file=sys.stderr)
            return EXIT_VALIDATION
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        alpha=getattr(args, "alpha", 0.05),
        B=getattr(args, "B", 1000),
        seed=getattr(args, "seed", None),
        t1=getattr(args, "t1", 0.0),
        t2=t2,
        output=args.output,
        format=args.format,
        kind=getattr(args, "kind", "mrl"),
        p_grid=getattr(args, "p_grid", 101),
        t2_threshold=getattr(args, "t2_threshold", 0.05),
    )
    code, text = run(cfg)
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
