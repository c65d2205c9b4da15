"""Command-line experiment runner.

Subcommands:

``run``           run every (sweep point x seed x algorithm) and write a CSV
                  report, a JSON sidecar with the bound audits, and one
                  schedule file per run.
``verify``        check a schedule file against a trace; exits non-zero on any
                  feasibility violation or failed bound check.
``oracle``        compare the algorithm with the exhaustive optimum on tiny
                  instances.
``gen-workload``  write the configured workload(s) as trace CSV files.

``COFLOW_SIM_THREADS`` caps the number of worker processes (0 = one per CPU).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import jsonschema
import numpy as np

from . import __version__
from .baselines import RNG_NAME, BaselineKind, run_baseline
from .bounds import audit
from .metrics import PERCENTILE_METHOD, norm_w, tail_cct
from .model import (
    CircuitEvent,
    CoflowSpec,
    FlowAssignment,
    Mode,
    ModelError,
    NetworkConfig,
    Schedule,
    Workload,
    verify_schedule,
)
from .oracle import DEFAULT_MAX_FLOWS, OracleLimitError, compare
from .scheduler import SchedulerOutput, run as run_ours
from .workload import (
    SynthParams,
    TraceError,
    WeightModel,
    format_trace,
    load_trace,
    random_workload,
    rng_for,
    sample_weights,
    synth_workload,
)

THREADS_ENV = "COFLOW_SIM_THREADS"
ALGORITHMS = ("ours", "rho", "rand")
CSV_COLUMNS = (
    "algorithm",
    "seed",
    "mode",
    "K",
    "N",
    "M",
    "delta",
    "total_weighted_cct",
    "norm_w",
    "p95_cct",
    "p99_cct",
    "gamma_w",
    "psi",
    "lemma2_max_slack",
    "lemma3_max_slack",
    "theorem_bound_ratio",
    "runtime_ms",
)

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "mode": {"enum": ["OCS", "EPS"]},
        "n": {"type": "integer", "minimum": 1},
        "rates": {"type": "array", "items": _POSITIVE, "minItems": 1},
        "delta": {"type": "number", "minimum": 0},
        "workload": {
            "type": "object",
            "minProperties": 1,
            "maxProperties": 1,
            "additionalProperties": False,
            "properties": {
                "trace": {"type": "string"},
                "synthetic": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "m": {"type": "integer", "minimum": 1},
                        "size_shape": _POSITIVE,
                        "size_scale": _POSITIVE,
                        "min_width": {"type": "integer", "minimum": 1},
                        "max_width": {"type": "integer", "minimum": 1},
                        "eps": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
                    },
                },
                "random": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "m": {"type": "integer", "minimum": 1},
                        "max_flows": {"type": "integer", "minimum": 1},
                        "integer_sizes": {"type": "boolean"},
                    },
                },
            },
        },
        "weights": {
            "type": "object",
            "required": ["model"],
            "additionalProperties": False,
            "properties": {
                "model": {"enum": ["constant", "uniform", "normal"]},
                "value": _POSITIVE,
                "lo": _POSITIVE,
                "hi": _POSITIVE,
                "mu": _POSITIVE,
                "sigma": {"type": "number", "minimum": 0},
            },
        },
        "algorithms": {"type": "array", "items": {"enum": list(ALGORITHMS)}, "minItems": 1, "uniqueItems": True},
        "seeds": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        "sweep": {
            "type": "object",
            "required": ["axis", "values"],
            "additionalProperties": False,
            "properties": {
                "axis": {"enum": ["delta", "n", "m"]},
                "values": {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 1},
            },
        },
        "output_dir": {"type": "string"},
    },
}

DEFAULTS: Dict[str, Any] = {
    "mode": "OCS",
    "n": 16,
    "rates": [10, 20, 30],
    "delta": 8,
    "workload": {"synthetic": {"m": 100}},
    "weights": None,
    "algorithms": list(ALGORITHMS),
    "seeds": [0],
    "sweep": None,
    "output_dir": "results",
}


class ConfigError(ValueError):
    pass


def _locate(text: str, path: Sequence[Any]) -> int:
    """Best-effort 1-based line of the JSON field at ``path``."""
    pos = 0
    for key in path:
        if isinstance(key, str):
            hit = re.compile(r'"%s"\s*:' % re.escape(key)).search(text, pos)
            if hit is None:
                break
            pos = hit.start()
    return text.count("\n", 0, pos) + 1


def _field(path: Sequence[Any]) -> str:
    return ".".join(str(p) for p in path) or "<root>"


@dataclass(frozen=True)
class Experiment:
    """A validated config with defaults filled in."""

    raw: Dict[str, Any]
    base_dir: str

    def __getitem__(self, key: str) -> Any:
        return self.raw[key]

    @property
    def workload_kind(self) -> str:
        return next(iter(self.raw["workload"]))

    def points(self) -> List[Optional[float]]:
        sweep = self.raw["sweep"]
        return [None] if sweep is None else list(sweep["values"])

    def network(self, point: Optional[float]) -> NetworkConfig:
        n, delta = self.raw["n"], self.raw["delta"]
        axis = self.raw["sweep"]["axis"] if self.raw["sweep"] else None
        if axis == "n":
            n = int(point)
        elif axis == "delta":
            delta = point
        return NetworkConfig(n, tuple(float(r) for r in self.raw["rates"]), float(delta), Mode(self.raw["mode"]))

    def coflow_count(self, point: Optional[float]) -> Optional[int]:
        if self.raw["sweep"] and self.raw["sweep"]["axis"] == "m":
            return int(point)
        return self.raw["workload"][self.workload_kind].get("m")

    def weight_model(self) -> Optional[WeightModel]:
        spec = self.raw["weights"]
        if spec is None:
            return None
        kind = spec["model"]
        if kind == "constant":
            return WeightModel.constant(spec.get("value", 1.0))
        if kind == "uniform":
            return WeightModel.uniform(spec["lo"], spec["hi"])
        return WeightModel.normal(spec["mu"], spec["sigma"])

    def build_workload(self, point: Optional[float], seed: int) -> Workload:
        cfg = self.network(point)
        kind = self.workload_kind
        body = self.raw["workload"][kind]
        weights = self.weight_model()
        if kind == "trace":
            wl = load_trace(Path(self.base_dir) / body, cfg)
            if weights is None:
                return wl
            w = sample_weights(weights, wl.m, seed)
            return Workload(tuple(CoflowSpec(c.id, wi, c.demand) for c, wi in zip(wl.coflows, w)), cfg)
        m = self.coflow_count(point)
        weights = weights or WeightModel.constant()
        if kind == "synthetic":
            params = SynthParams(**{k: v for k, v in body.items() if k != "m"})
            return synth_workload(cfg, m, seed, params, weights)
        return random_workload(
            rng_for(seed),
            cfg,
            m,
            max_flows=body.get("max_flows"),
            weights=weights,
            integer_sizes=body.get("integer_sizes", False),
        )


def parse_config(text: str, source: str = "<config>", base_dir: str = ".") -> Experiment:
    """Validate a JSON config; every problem is reported as ``source:line: field: message``."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    problems = [
        f"{source}:{_locate(text, e.absolute_path)}: field '{_field(e.absolute_path)}': {e.message}"
        for e in sorted(validator.iter_errors(raw), key=lambda e: list(map(str, e.absolute_path)))
    ]
    if problems:
        raise ConfigError("\n".join(problems))

    merged = {**DEFAULTS, **raw}
    exp = Experiment(merged, base_dir)

    def fail(path: Sequence[str], msg: str) -> None:
        problems.append(f"{source}:{_locate(text, path)}: field '{_field(path)}': {msg}")

    sweep = merged["sweep"]
    if sweep is not None:
        if sweep["axis"] == "m" and exp.workload_kind == "trace":
            fail(["sweep", "axis"], "a trace has a fixed number of coflows; sweep 'm' needs a generated workload")
        if sweep["axis"] in ("n", "m") and any(v != int(v) or v < 1 for v in sweep["values"]):
            fail(["sweep", "values"], f"'{sweep['axis']}' values must be positive integers")
    if exp.workload_kind != "trace" and exp.coflow_count(exp.points()[0]) is None:
        fail(["workload", exp.workload_kind], "'m' is required for generated workloads")
    if exp.workload_kind == "synthetic":
        body = merged["workload"]["synthetic"]
        try:
            SynthParams(**{k: v for k, v in body.items() if k != "m"})
        except ValueError as exc:
            fail(["workload", "synthetic"], str(exc))
    if merged["weights"] is not None:
        need = {"uniform": ("lo", "hi"), "normal": ("mu", "sigma")}.get(merged["weights"]["model"], ())
        missing = [k for k in need if k not in merged["weights"]]
        if missing:
            fail(["weights", "model"], f"model '{merged['weights']['model']}' needs {missing}")
        else:
            try:
                exp.weight_model()
            except ValueError as exc:
                fail(["weights"], str(exc))
    for point in exp.points():
        try:
            exp.network(point)
        except ModelError as exc:
            path = ["sweep", "values"] if sweep is not None and sweep["axis"] in ("delta", "n") else ["delta"]
            if "rate" in str(exc):
                path = ["rates"]
            fail(path, str(exc))
            break
    if problems:
        raise ConfigError("\n".join(problems))
    return exp


def load_config(path: Optional[str]) -> Experiment:
    if path is None:
        return parse_config("{}", "<defaults>")
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config(text, str(p), str(p.parent))


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}") from None
    if n < 0:
        raise ConfigError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}")
    return n or os.cpu_count() or 1


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def _json_default(obj: Any) -> Any:
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def schedule_document(out: SchedulerOutput, workload: Workload, algorithm: str, seed: int) -> Dict[str, Any]:
    """Portable schedule file: 1-based ports and cores, coflows referenced by id."""
    cfg = workload.config
    return {
        "algorithm": algorithm,
        "seed": seed,
        "network": {"mode": cfg.mode.value, "n": cfg.n, "rates": list(cfg.rates), "delta": cfg.delta},
        "order": [workload.coflows[m].id for m in out.order],
        "events": [
            {
                "coflow": e.coflow_id,
                "core": e.core + 1,
                "src": e.ingress + 1,
                "dst": e.egress + 1,
                "establish": e.establish,
                "start": e.start,
                "finish": e.finish,
                "size": e.size,
            }
            for e in out.schedule.events
        ],
    }


def _run_cell(task: Tuple[Experiment, int, Optional[float], int]) -> Dict[str, Any]:
    """Run all configured algorithms on one (sweep point, seed)."""
    exp, point_idx, point, seed = task
    workload = exp.build_workload(point, seed)
    cfg = workload.config
    results: Dict[str, Tuple[SchedulerOutput, float]] = {}
    for algo in ["ours"] + [a for a in exp["algorithms"] if a != "ours"]:
        t0 = time.perf_counter()
        if algo == "ours":
            out = run_ours(workload)
        else:
            out = run_baseline(BaselineKind(algo), workload, seed if algo == "rand" else None)
        results[algo] = (out, (time.perf_counter() - t0) * 1e3)

    ours_total = results["ours"][0].total_weighted_cct
    rows, runs, schedules = [], [], []
    for algo in exp["algorithms"]:
        out, ms = results[algo]
        a = out.audit
        ccts = list(out.cct.values())
        bound_ratio = a.theorem2_ratio if cfg.mode is Mode.EPS else a.theorem1_ratio
        rows.append(
            {
                "algorithm": algo,
                "seed": str(seed),
                "mode": cfg.mode.value,
                "K": str(cfg.k),
                "N": str(cfg.n),
                "M": str(workload.m),
                "delta": _fmt(cfg.delta),
                "total_weighted_cct": _fmt(out.total_weighted_cct),
                "norm_w": _fmt(norm_w(out.total_weighted_cct, ours_total)),
                "p95_cct": _fmt(tail_cct(ccts, 95)),
                "p99_cct": _fmt(tail_cct(ccts, 99)),
                "gamma_w": _fmt(a.gamma_w),
                "psi": str(a.psi),
                "lemma2_max_slack": _fmt(a.lemma2_slack),
                "lemma3_max_slack": _fmt(a.lemma3_slack),
                "theorem_bound_ratio": _fmt(bound_ratio),
                "runtime_ms": f"{ms:.3f}",
            }
        )
        name = f"p{point_idx}_s{seed}_{algo}"
        runs.append(
            {
                "algorithm": algo,
                "seed": seed,
                "sweep_value": point,
                "schedule": f"schedules/{name}.json",
                "workload": f"workloads/p{point_idx}_s{seed}.csv",
                "passed": a.passed,
                "audit": a.to_dict(),
            }
        )
        schedules.append((name, schedule_document(out, workload, algo, seed)))
    return {
        "key": (point_idx, seed),
        "rows": rows,
        "runs": runs,
        "schedules": schedules,
        "trace": format_trace(workload.coflows),
    }


def _tasks(exp: Experiment) -> List[Tuple[Experiment, int, Optional[float], int]]:
    return [(exp, idx, point, seed) for idx, point in enumerate(exp.points()) for seed in exp["seeds"]]


def execute(exp: Experiment, workers: int = 1) -> List[Dict[str, Any]]:
    tasks = _tasks(exp)
    if workers <= 1 or len(tasks) == 1:
        cells = [_run_cell(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            cells = list(pool.map(_run_cell, tasks))
    return sorted(cells, key=lambda c: c["key"])


def render_csv(cells: Sequence[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for cell in cells:
        writer.writerows(cell["rows"])
    return buf.getvalue()


def write_report(exp: Experiment, cells: Sequence[Dict[str, Any]], out_dir: Path) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "schedules").mkdir(exist_ok=True)
    (out_dir / "workloads").mkdir(exist_ok=True)
    csv_path = out_dir / "results.csv"
    csv_path.write_text(render_csv(cells), encoding="utf-8", newline="")
    for cell in cells:
        point_idx, seed = cell["key"]
        (out_dir / "workloads" / f"p{point_idx}_s{seed}.csv").write_text(cell["trace"], encoding="utf-8", newline="")
        for name, doc in cell["schedules"]:
            (out_dir / "schedules" / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    sidecar = {
        "metadata": {
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "version": __version__,
            "rng": RNG_NAME,
            "percentile_method": PERCENTILE_METHOD,
            "csv_columns": list(CSV_COLUMNS),
            "config": exp.raw,
        },
        "runs": [run for cell in cells for run in cell["runs"]],
    }
    (out_dir / "results.json").write_text(
        json.dumps(sidecar, indent=1, default=_json_default) + "\n", encoding="utf-8"
    )
    return csv_path


def _apply_overrides(exp: Experiment, args: argparse.Namespace) -> Experiment:
    raw = dict(exp.raw)
    if getattr(args, "seed", None) is not None:
        raw["seeds"] = [args.seed]
    if getattr(args, "baseline", None) is not None:
        raw["algorithms"] = ["ours", args.baseline]
    return Experiment(raw, exp.base_dir)


def _output_dir(exp: Experiment, args: argparse.Namespace) -> Path:
    if args.out is not None:
        return Path(args.out)
    return Path(exp.base_dir) / exp["output_dir"]


def cmd_run(args: argparse.Namespace) -> int:
    exp = _apply_overrides(load_config(args.config), args)
    cells = execute(exp, worker_count())
    csv_path = write_report(exp, cells, _output_dir(exp, args))
    failed = [
        f"{r['algorithm']} seed {r['seed']} point {r['sweep_value']}: {', '.join(k for k, v in r['audit']['checks'].items() if not v)}"
        for c in cells
        for r in c["runs"]
        if not r["passed"]
    ]
    print(f"wrote {sum(len(c['rows']) for c in cells)} rows to {csv_path}")
    for line in failed:
        print(f"audit failed: {line}", file=sys.stderr)
    return 0


def read_schedule(path: Path) -> Tuple[str, NetworkConfig, List[int], Schedule]:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        net = doc["network"]
        cfg = NetworkConfig(int(net["n"]), tuple(float(r) for r in net["rates"]), float(net["delta"]), Mode(net["mode"]))
        events = tuple(
            CircuitEvent(
                int(e["coflow"]),
                int(e["core"]) - 1,
                int(e["src"]) - 1,
                int(e["dst"]) - 1,
                float(e["establish"]),
                float(e["start"]),
                float(e["finish"]),
                float(e["size"]),
            )
            for e in doc["events"]
        )
        order = [int(x) for x in doc["order"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: cannot read schedule: {exc}") from None
    return str(doc.get("algorithm", "ours")), cfg, order, Schedule(events)


def check_schedule(trace: Path, schedule_path: Path) -> List[str]:
    """All feasibility violations and failed bound checks of a schedule file."""
    algorithm, cfg, order_ids, schedule = read_schedule(schedule_path)
    workload = load_trace(trace, cfg)
    index_of = {c.id: m for m, c in enumerate(workload.coflows)}
    if sorted(order_ids) != sorted(index_of):
        return ["order: schedule order does not list every trace coflow exactly once"]
    order = [index_of[c] for c in order_ids]

    placed: Dict[Tuple[int, int, int], set] = {}
    for e in schedule.events:
        if e.coflow_id in index_of:
            placed.setdefault((index_of[e.coflow_id], e.ingress, e.egress), set()).add(e.core)
    problems = []
    core_of = {}
    for m, c in enumerate(workload.coflows):
        for i, j, _ in c.demand.flows():
            cores = placed.get((m, i, j), set())
            if len(cores) != 1:
                problems.append(f"coverage: coflow {c.id} flow ({i + 1},{j + 1}) is on {len(cores)} cores")
            elif not 0 <= next(iter(cores)) < cfg.k:
                problems.append(f"range: coflow {c.id} flow ({i + 1},{j + 1}) on unknown core")
            else:
                core_of[(m, i, j)] = next(iter(cores))
    if problems:
        return problems
    assignment = FlowAssignment.from_cores(workload, core_of)
    violations = verify_schedule(schedule, assignment, workload)
    if violations:
        return violations
    report = audit(workload, order, assignment, schedule, check_assignment_bound=algorithm == "ours")
    return [f"audit: {name} bound violated" for name in report.failures()]


def cmd_verify(args: argparse.Namespace) -> int:
    problems = check_schedule(Path(args.trace), Path(args.schedule))
    for line in problems:
        print(line)
    if not problems:
        print("ok: schedule is feasible and every bound check holds")
    return 1 if problems else 0


ORACLE_COLUMNS = ("seed", "K", "N", "M", "flows", "algorithm", "oracle", "weighted_lb", "algorithm_ratio", "lb_ratio")


def cmd_oracle(args: argparse.Namespace) -> int:
    exp = _apply_overrides(load_config(args.config), args)
    rows = []
    broken = []
    for _, point, seed in ((i, p, s) for i, p in enumerate(exp.points()) for s in exp["seeds"]):
        workload = exp.build_workload(point, seed)
        cmp = compare(workload, max_flows=args.max_flows)
        if not (cmp.weighted_lb <= cmp.oracle <= cmp.algorithm):
            broken.append(seed)
        rows.append(
            {
                "seed": str(seed),
                "K": str(workload.config.k),
                "N": str(workload.config.n),
                "M": str(workload.m),
                "flows": str(sum(len(c.demand.flows()) for c in workload.coflows)),
                "algorithm": _fmt(cmp.algorithm),
                "oracle": _fmt(cmp.oracle),
                "weighted_lb": _fmt(cmp.weighted_lb),
                "algorithm_ratio": _fmt(cmp.algorithm_ratio),
                "lb_ratio": _fmt(cmp.lb_ratio),
            }
        )
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=ORACLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "oracle.csv").write_text(buf.getvalue(), encoding="utf-8", newline="")
    else:
        sys.stdout.write(buf.getvalue())
    ratios = [float(r["algorithm_ratio"]) for r in rows]
    print(f"instances: {len(rows)}  max algorithm/oracle: {max(ratios)!r}  mean: {sum(ratios) / len(ratios)!r}")
    for seed in broken:
        print(f"sandwich violated for seed {seed}", file=sys.stderr)
    return 1 if broken else 0


def cmd_gen_workload(args: argparse.Namespace) -> int:
    exp = _apply_overrides(load_config(args.config), args)
    out = Path(args.out) if args.out is not None else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    for idx, point in enumerate(exp.points()):
        for seed in exp["seeds"]:
            wl = exp.build_workload(point, seed)
            suffix = "" if exp["sweep"] is None else f"_p{idx}"
            path = out / f"workload_s{seed}{suffix}.csv"
            path.write_text(format_trace(wl.coflows), encoding="utf-8", newline="")
            print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coflow-sim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON experiment config (defaults apply when omitted)")
        p.add_argument("--seed", type=int, help="run only this seed")
        p.add_argument("--out", help="output directory")

    p = sub.add_parser("run", help="run the configured experiment")
    common(p)
    p.add_argument("--baseline", choices=[k.value for k in BaselineKind], help="compare only against this baseline")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="check a schedule file against a trace")
    p.add_argument("trace", help="trace CSV")
    p.add_argument("schedule", help="schedule JSON written by 'run'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="compare with the exhaustive optimum on tiny instances")
    common(p)
    p.add_argument("--max-flows", type=int, default=DEFAULT_MAX_FLOWS, help="oracle size limit")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen-workload", help="write generated workloads as trace CSV")
    common(p)
    p.set_defaults(func=cmd_gen_workload)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, TraceError, OracleLimitError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
