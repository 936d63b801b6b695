"""Command-line surface for the power-transform toolkit.

Subcommands
-----------
fit     per-column lambda fitting from CSV
curve   NLL values over a lambda grid, one row per (column, engine, lambda)
fedsim  simulated federated fitting with an optional JSON-lines round trace
advgen  write an overflow-inducing dataset CSV plus its expected-value fixture
check   predict per-element overflow at a given lambda without computing it

Reports default to JSON on stdout and validate against the shipped schema
(data/output_schema.json); --format csv emits delimited rows instead, with
non-finite numbers left empty so the tool's own reader treats them as
missing. --plot-dir additionally renders figures next to whichever report
was requested.

A config file (--config, plain KEY=VALUE lines, # comments) can supply any
long-flag value under its flag name with dashes as underscores, e.g.
``transform=yj`` or ``max_evals=200``; explicit flags win, and keys that do
not apply to the running subcommand are ignored so one file can serve a
whole pipeline.

Exit codes: 0 success, 2 input/parse error, 3 domain error (including
overflow), 4 degenerate data, 5 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .adversarial import (
    OverflowSign,
    PrecisionProfile,
    detect_overflow,
    gen_adversarial,
)
from .errors import (
    ConfigurationError,
    DegenerateDataError,
    DomainError,
    TransformOverflowError,
)
from .federated import ClientShard, FedProtocol, fed_fit
from .likelihood import Dataset, EngineMode, nll_curve
from .optimize import (
    DEFAULT_LAMBDA_INTERVAL,
    DEFAULT_MAX_EVALS,
    DEFAULT_X_TOLERANCE,
    FitOptions,
    fit_lambda,
)
from .transforms import TransformKind

__all__ = [
    "ColumnSelection",
    "RunConfig",
    "InputError",
    "read_columns",
    "shard_values",
    "main",
]


class InputError(ValueError):
    """Unreadable or unparseable input: file, CSV shape, or column choice."""


@dataclass(frozen=True)
class ColumnSelection:
    source: str
    columns: tuple[str, ...] | None
    header: bool


@dataclass(frozen=True)
class RunConfig:
    transform: TransformKind
    options: FitOptions
    engines: tuple[EngineMode, ...]
    shards: int
    seed: int
    protocol: FedProtocol
    out_format: str


# ---------------------------------------------------------------- input ----


def read_columns(selection: ColumnSelection) -> list[tuple[str, list[float], int]]:
    """Selected columns as (name, finite values, dropped-row count).

    Empty fields drop the row for that column only; anything else that does
    not parse as a finite real is an input error.
    """
    try:
        with open(selection.source, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as exc:
        raise InputError(f"cannot read {selection.source}: {exc}") from None
    if not rows:
        raise InputError(f"{selection.source}: no rows")
    if selection.header:
        names = [c.strip() for c in rows[0]]
        body = rows[1:]
    else:
        names = [str(i) for i in range(len(rows[0]))]
        body = rows
    if selection.columns is None:
        picked = list(range(len(names)))
    else:
        picked = []
        for token in selection.columns:
            if token in names:
                picked.append(names.index(token))
                continue
            try:
                idx = int(token)
            except ValueError:
                raise InputError(
                    f"unknown column {token!r}; available: {', '.join(names)}"
                ) from None
            if not 0 <= idx < len(names):
                raise InputError(f"column index {idx} out of range ({len(names)} columns)")
            picked.append(idx)
    out = []
    for idx in picked:
        values: list[float] = []
        dropped = 0
        for row_i, row in enumerate(body, start=1):
            field = row[idx].strip() if idx < len(row) else ""
            if field == "":
                dropped += 1
                continue
            try:
                value = float(field)
            except ValueError:
                raise InputError(
                    f"{selection.source}: column {names[idx]!r}, row {row_i}: "
                    f"not a number: {field!r}"
                ) from None
            if not math.isfinite(value):
                raise InputError(
                    f"{selection.source}: column {names[idx]!r}, row {row_i}: "
                    f"non-finite value {field!r}"
                )
            values.append(value)
        out.append((names[idx], values, dropped))
    return out


def shard_values(values: Sequence[float], k: int, seed: int) -> list[list[float]]:
    """Seeded round-robin assignment over a shuffled row order."""
    if not 1 <= k <= len(values):
        raise ConfigurationError(f"shard count must be in [1, {len(values)}], got {k}")
    order = list(range(len(values)))
    random.Random(seed).shuffle(order)
    return [[values[j] for j in order[i::k]] for i in range(k)]


# --------------------------------------------------------------- config ----

_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


def _pair(text: str) -> list[float]:
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise ValueError(text)
    return [float(p) for p in parts]


def _triple(text: str) -> list[float]:
    parts = text.replace(",", " ").split()
    if len(parts) != 3:
        raise ValueError(text)
    return [float(p) for p in parts]


# config key -> (argparse dest, converter to the flag's parsed type)
_CONFIG_KEYS: dict[str, tuple[str, Callable[[str], object]]] = {
    "transform": ("transform", str),
    "bound": ("bound", float),
    "interval": ("interval", _pair),
    "grid": ("grid", _triple),
    "engine": ("engine", str),
    "shards": ("shards", int),
    "seed": ("seed", int),
    "protocol": ("protocol", str),
    "format": ("format", str),
    "tolerance": ("tolerance", float),
    "max_evals": ("max_evals", int),
    "columns": ("columns", str),
    "out": ("out", str),
    "trace": ("trace", str),
    "plot_dir": ("plot_dir", str),
    "fixture_out": ("fixture_out", str),
    "lambda": ("lmbda", float),
    "profile": ("profile", str),
    "sign": ("sign", str),
    "base": ("base", float),
    "duplicates": ("duplicates", int),
    "perturbation": ("perturbation", float),
}


def _load_config(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    entries: dict[str, str] = {}
    for line_i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InputError(f"{path}:{line_i}: expected KEY=VALUE, got {stripped!r}")
        key, _, value = stripped.partition("=")
        entries[key.strip().lower().replace("-", "_")] = value.strip()
    return entries


def _apply_config(args: argparse.Namespace, entries: dict[str, str]) -> None:
    for key, raw in entries.items():
        if key == "header":
            word = raw.lower()
            if word in _FALSE_WORDS:
                args.no_header = True
            elif word not in _TRUE_WORDS:
                raise ConfigurationError(f"bad config value header={raw!r}")
            continue
        if key not in _CONFIG_KEYS:
            raise ConfigurationError(f"unknown config key {key!r}")
        dest, convert = _CONFIG_KEYS[key]
        if not hasattr(args, dest):
            continue  # key belongs to another subcommand; one file serves all
        if getattr(args, dest) is not None:
            continue  # explicit flag wins
        try:
            setattr(args, dest, convert(raw))
        except (ValueError, TypeError):
            raise ConfigurationError(f"bad config value {key}={raw!r}") from None


# ----------------------------------------------------------- resolution ----


def _selection(args: argparse.Namespace) -> ColumnSelection:
    columns = None
    if args.columns is not None:
        tokens = tuple(tok.strip() for tok in args.columns.split(",") if tok.strip())
        if not tokens:
            raise ConfigurationError("empty --columns list")
        columns = tokens
    return ColumnSelection(args.source, columns, header=not args.no_header)


def _run_config(args: argparse.Namespace, default_bound: float | None = None) -> RunConfig:
    transform = TransformKind.parse(getattr(args, "transform", None) or "bc")
    interval = getattr(args, "interval", None)
    interval = tuple(interval) if interval is not None else DEFAULT_LAMBDA_INTERVAL
    tolerance = getattr(args, "tolerance", None)
    max_evals = getattr(args, "max_evals", None)
    bound = getattr(args, "bound", None)
    options = FitOptions(
        y_bound=bound if bound is not None else default_bound,
        lambda_interval=(float(interval[0]), float(interval[1])),
        x_tolerance=tolerance if tolerance is not None else DEFAULT_X_TOLERANCE,
        max_evals=max_evals if max_evals is not None else DEFAULT_MAX_EVALS,
    )
    engine_list = getattr(args, "engine", None) or "stable"
    engines = tuple(EngineMode.parse(tok.strip()) for tok in engine_list.split(",") if tok.strip())
    if not engines:
        raise ConfigurationError("empty --engine list")
    shards = getattr(args, "shards", None)
    seed = getattr(args, "seed", None)
    protocol = FedProtocol.parse(getattr(args, "protocol", None) or "brent")
    out_format = getattr(args, "format", None) or "json"
    if out_format not in ("json", "csv"):
        raise ConfigurationError(f"format must be json or csv, got {out_format!r}")
    return RunConfig(
        transform=transform,
        options=options,
        engines=engines,
        shards=shards if shards is not None else 10,
        seed=seed if seed is not None else 0,
        protocol=protocol,
        out_format=out_format,
    )


# --------------------------------------------------------------- output ----


def _engine_name(mode: EngineMode) -> str:
    return mode.value.replace("_", "-")


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if not math.isfinite(value) else repr(value)
    return str(value)


def _render_csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _write_text(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _emit(args: argparse.Namespace, fmt: str, report: dict,
          header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    if fmt == "csv":
        _write_text(args.out, _render_csv(header, rows))
    else:
        _write_text(args.out, json.dumps(report, indent=2, allow_nan=False) + "\n")


def _plot_dir(args: argparse.Namespace) -> Path | None:
    value = getattr(args, "plot_dir", None)
    if value is None:
        return None
    path = Path(value)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _json_number(value: float) -> float | None:
    return value if math.isfinite(value) else None


# ------------------------------------------------------------- commands ----


def _smoothness_grid(lambda_star: float) -> list[float]:
    half = 2.0 * (1.0 + abs(lambda_star))
    return [lambda_star + half * (i - 20) / 20.0 for i in range(41)]


def _second_diffs_positive(ys: Sequence[float]) -> bool:
    return all(ys[i - 1] - 2.0 * ys[i] + ys[i + 1] > 0.0 for i in range(1, len(ys) - 1))


def _cmd_fit(args: argparse.Namespace) -> None:
    selection = _selection(args)
    cfg = _run_config(args)
    plot_dir = _plot_dir(args)
    columns = []
    plots = []
    for name, values, dropped in read_columns(selection):
        data = Dataset(tuple(values))
        result = fit_lambda(data, cfg.transform, cfg.options)
        grid = _smoothness_grid(result.lambda_star)
        points = nll_curve(data, cfg.transform, grid, EngineMode.STABLE)
        ys = [nv.value for _, nv in points]
        smooth = all(nv.finite for _, nv in points) and _second_diffs_positive(ys)
        columns.append({
            "column": name,
            "n": data.n,
            "n_dropped": dropped,
            "lambda_star": result.lambda_star,
            "nll_at_star": result.nll_at_star,
            "evaluations": result.evaluations,
            "bound_active": result.bound_active,
            "interval_used": list(result.interval_used),
            "curve_smooth": smooth,
        })
        if plot_dir is not None:
            from .plots import plot_nll_curve, safe_name

            path = plot_dir / f"fit_{safe_name(name)}.png"
            plot_nll_curve(
                path,
                f"{name}: stable NLL near the optimum",
                [("stable", grid, ys)],
                lambda_star=result.lambda_star,
            )
            plots.append(str(path))
    report = {
        "command": "fit",
        "source": selection.source,
        "transform": cfg.transform.value,
        "columns": columns,
    }
    if plots:
        report["plots"] = plots
    header = ["column", "n", "n_dropped", "lambda_star", "nll_at_star", "evaluations",
              "bound_active", "interval_lo", "interval_hi", "curve_smooth"]
    rows = [[c["column"], c["n"], c["n_dropped"], c["lambda_star"], c["nll_at_star"],
             c["evaluations"], c["bound_active"], c["interval_used"][0],
             c["interval_used"][1], c["curve_smooth"]] for c in columns]
    _emit(args, cfg.out_format, report, header, rows)


def _cmd_curve(args: argparse.Namespace) -> None:
    selection = _selection(args)
    cfg = _run_config(args)
    if args.grid is None:
        raise ConfigurationError("curve needs --grid LO HI N (or a config grid= entry)")
    lo, hi, points_raw = args.grid
    points = int(points_raw)
    if points != points_raw or points < 2:
        raise ConfigurationError("grid point count must be an integer >= 2")
    if not lo < hi:
        raise ConfigurationError("grid needs lo < hi")
    grid = [lo + (hi - lo) * i / (points - 1) for i in range(points)]
    plot_dir = _plot_dir(args)
    columns = []
    plots = []
    for name, values, dropped in read_columns(selection):
        data = Dataset(tuple(values))
        rows_out = []
        series = []
        for mode in cfg.engines:
            evaluated = nll_curve(data, cfg.transform, grid, mode)
            for lam, nv in evaluated:
                rows_out.append({
                    "engine": _engine_name(mode),
                    "lambda": lam,
                    "nll": _json_number(nv.value),
                    "finite": nv.finite,
                })
            series.append((_engine_name(mode), grid, [nv.value for _, nv in evaluated]))
        columns.append({"column": name, "n": data.n, "n_dropped": dropped, "rows": rows_out})
        if plot_dir is not None:
            from .plots import plot_nll_curve, safe_name

            path = plot_dir / f"curve_{safe_name(name)}.png"
            plot_nll_curve(path, f"{name}: NLL by engine", series)
            plots.append(str(path))
    report = {
        "command": "curve",
        "source": selection.source,
        "transform": cfg.transform.value,
        "grid": {"lo": lo, "hi": hi, "points": points},
        "engines": [_engine_name(m) for m in cfg.engines],
        "columns": columns,
    }
    if plots:
        report["plots"] = plots
    header = ["column", "engine", "lambda", "nll", "finite"]
    rows = [[c["column"], r["engine"], r["lambda"], r["nll"], r["finite"]]
            for c in columns for r in c["rows"]]
    _emit(args, cfg.out_format, report, header, rows)


def _cmd_fedsim(args: argparse.Namespace) -> None:
    selection = _selection(args)
    cfg = _run_config(args)  # fed_fit supplies the mandatory default bound
    plot_dir = _plot_dir(args)
    trace_records: list[dict] = []
    columns = []
    plots = []
    for name, values, dropped in read_columns(selection):
        shards = [
            ClientShard(i, Dataset(tuple(part)))
            for i, part in enumerate(shard_values(values, cfg.shards, cfg.seed))
        ]
        col_records: list[dict] = []
        result = fed_fit(
            shards,
            cfg.transform,
            cfg.options,
            protocol=cfg.protocol,
            trace_sink=col_records.append,
        )
        summary = col_records[-1]
        columns.append({
            "column": name,
            "n": len(values),
            "n_dropped": dropped,
            "shards": cfg.shards,
            "seed": cfg.seed,
            "protocol": summary["protocol"],
            "lambda_star": result.lambda_star,
            "nll_at_star": result.nll_at_star,
            "rounds": result.rounds,
            "messages_per_round": result.messages_per_round,
            "downlink_numbers_per_round": summary["downlink_numbers_per_round"],
            "bound_active": result.bound_active,
            "interval_used": list(summary["interval"]),
        })
        trace_records.extend({"column": name, **record} for record in col_records)
        if plot_dir is not None:
            from .plots import plot_fed_rounds, safe_name

            probes = sorted({
                (record["round_index"], record["lambda"])
                for record in col_records
                if not record.get("summary")
            })
            path = plot_dir / f"fedsim_{safe_name(name)}.png"
            plot_fed_rounds(
                path,
                f"{name}: federated lambda probes",
                [p[0] for p in probes],
                [p[1] for p in probes],
            )
            plots.append(str(path))
    if args.trace is not None:
        lines = "".join(json.dumps(record, allow_nan=False) + "\n" for record in trace_records)
        Path(args.trace).write_text(lines, encoding="utf-8")
    report = {
        "command": "fedsim",
        "source": selection.source,
        "transform": cfg.transform.value,
        "columns": columns,
    }
    if args.trace is not None:
        report["trace"] = args.trace
    if plots:
        report["plots"] = plots
    header = ["column", "n", "n_dropped", "shards", "seed", "protocol", "lambda_star",
              "nll_at_star", "rounds", "messages_per_round", "downlink_numbers_per_round",
              "bound_active", "interval_lo", "interval_hi"]
    rows = [[c["column"], c["n"], c["n_dropped"], c["shards"], c["seed"], c["protocol"],
             c["lambda_star"], c["nll_at_star"], c["rounds"], c["messages_per_round"],
             c["downlink_numbers_per_round"], c["bound_active"], c["interval_used"][0],
             c["interval_used"][1]] for c in columns]
    _emit(args, cfg.out_format, report, header, rows)


def _cmd_advgen(args: argparse.Namespace) -> None:
    transform = TransformKind.parse(args.transform or "bc")
    if args.sign is None:
        raise ConfigurationError("advgen needs --sign negative|positive")
    if args.out is None:
        raise ConfigurationError("advgen needs --out for the dataset CSV")
    sign = OverflowSign.parse(args.sign)
    profile = PrecisionProfile.parse(args.profile or "double")
    custom = not (args.base is None and args.duplicates is None and args.perturbation is None)
    case = gen_adversarial(
        transform,
        sign,
        profile,
        base=args.base,
        duplicates=args.duplicates,
        perturbation=args.perturbation,
    )
    out = Path(args.out)
    fixture_path = Path(args.fixture_out) if args.fixture_out is not None \
        else out.with_suffix(".expected.json")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["value"])
    for value in case.data:
        writer.writerow([repr(value)])
    out.write_text(buf.getvalue(), encoding="utf-8")
    fixture = {
        "transform": transform.value,
        "overflow_sign": sign.value,
        "profile": profile.name,
        "data": list(case.data),
        "expected_lambda": case.expected_lambda,
        "expected_extreme_log10": case.expected_extreme_log10,
        "source": "fitted" if custom else "tabulated",
    }
    fixture_path.write_text(json.dumps(fixture, indent=2, allow_nan=False) + "\n",
                            encoding="utf-8")
    report = {
        "command": "advgen",
        "csv": str(out),
        "fixture": str(fixture_path),
        "case": fixture,
    }
    sys.stdout.write(json.dumps(report, indent=2, allow_nan=False) + "\n")


def _cmd_check(args: argparse.Namespace) -> None:
    selection = _selection(args)
    cfg = _run_config(args)
    if args.lmbda is None:
        raise ConfigurationError("check needs --lambda")
    profile = PrecisionProfile.parse(args.profile or "double")
    columns = []
    for name, values, dropped in read_columns(selection):
        data = Dataset(tuple(values))
        rep = detect_overflow(data, cfg.transform, args.lmbda, profile)
        elements = [
            {"value": v, "log10_magnitude": _json_number(m), "flagged": f}
            for v, m, f in zip(data.values, rep.element_log10, rep.flagged)
        ]
        columns.append({
            "column": name,
            "n": data.n,
            "n_dropped": dropped,
            "threshold_log10": rep.threshold_log10,
            "any_flagged": rep.any_flagged,
            "elements": elements,
        })
    report = {
        "command": "check",
        "source": selection.source,
        "transform": cfg.transform.value,
        "lambda": args.lmbda,
        "profile": profile.name,
        "columns": columns,
    }
    header = ["column", "value", "log10_magnitude", "flagged"]
    rows = [[c["column"], e["value"], e["log10_magnitude"], e["flagged"]]
            for c in columns for e in c["elements"]]
    _emit(args, cfg.out_format, report, header, rows)


# ---------------------------------------------------------------- parser ----


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerfit",
        description="Numerically stable power-transform fitting, analysis, and simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("source", help="input CSV file")
        p.add_argument("--columns", default=None,
                       help="comma-separated column names or indices (default: all)")
        p.add_argument("--no-header", action="store_true",
                       help="treat the first row as data; columns are indices")

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--transform", default=None, metavar="{bc,yj}",
                       help="transform family (default bc)")
        p.add_argument("--config", default=None, help="KEY=VALUE config file")
        p.add_argument("--format", default=None, metavar="{json,csv}",
                       help="report format (default json)")
        p.add_argument("--out", default=None, help="report file (default stdout)")

    def add_fit_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--bound", type=float, default=None, metavar="Y",
                       help="cap |transformed value| at Y via the feasible interval")
        p.add_argument("--interval", type=float, nargs=2, default=None,
                       metavar=("LO", "HI"), help="lambda search interval")
        p.add_argument("--tolerance", type=float, default=None, metavar="X",
                       help="lambda convergence tolerance (default 1e-8)")
        p.add_argument("--max-evals", type=int, default=None, metavar="N",
                       help="evaluation budget (default 500)")

    def add_plots(p: argparse.ArgumentParser) -> None:
        p.add_argument("--plot-dir", default=None, metavar="DIR",
                       help="also render figures into DIR")

    p_fit = sub.add_parser("fit", help="fit lambda per column")
    add_input(p_fit)
    add_common(p_fit)
    add_fit_options(p_fit)
    add_plots(p_fit)

    p_curve = sub.add_parser("curve", help="evaluate NLL over a lambda grid")
    add_input(p_curve)
    add_common(p_curve)
    p_curve.add_argument("--grid", type=float, nargs=3, default=None,
                         metavar=("LO", "HI", "N"), help="lambda grid")
    p_curve.add_argument("--engine", default=None,
                         help="comma list of stable,linear,keep-constant,no-factor "
                              "(default stable)")
    add_plots(p_curve)

    p_fed = sub.add_parser("fedsim", help="simulate federated fitting")
    add_input(p_fed)
    add_common(p_fed)
    add_fit_options(p_fed)
    p_fed.add_argument("--shards", type=int, default=None, metavar="K",
                       help="client count (default 10)")
    p_fed.add_argument("--seed", type=int, default=None, metavar="S",
                       help="sharding seed (default 0)")
    p_fed.add_argument("--protocol", default=None, metavar="{brent,grid:N}",
                       help="round protocol (default brent)")
    p_fed.add_argument("--trace", default=None, metavar="FILE",
                       help="write the round trace as JSON lines")
    add_plots(p_fed)

    p_adv = sub.add_parser("advgen", help="generate an overflow-inducing dataset")
    add_common(p_adv)
    p_adv.add_argument("--sign", default=None, metavar="{negative,positive}",
                       help="overflow direction")
    p_adv.add_argument("--profile", default=None, metavar="{double,quadruple,octuple}",
                       help="float format to target (default double)")
    p_adv.add_argument("--base", type=float, default=None,
                       help="custom base value instead of the reference case")
    p_adv.add_argument("--duplicates", type=int, default=None,
                       help="custom copy count of the base value")
    p_adv.add_argument("--perturbation", type=float, default=None,
                       help="custom relative nudge toward the fixed point")
    p_adv.add_argument("--fixture-out", default=None, metavar="FILE",
                       help="expected-value fixture path (default <out>.expected.json)")

    p_check = sub.add_parser("check", help="predict overflow without computing it")
    add_input(p_check)
    add_common(p_check)
    p_check.add_argument("--lambda", dest="lmbda", type=float, default=None,
                         help="lambda to probe")
    p_check.add_argument("--profile", default=None, metavar="{double,quadruple,octuple}",
                         help="float format to test against (default double)")

    return parser


_COMMANDS = {
    "fit": _cmd_fit,
    "curve": _cmd_curve,
    "fedsim": _cmd_fedsim,
    "advgen": _cmd_advgen,
    "check": _cmd_check,
}


def _fail(code: int, exc: Exception) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if getattr(args, "config", None) is not None:
            _apply_config(args, _load_config(args.config))
        _COMMANDS[args.command](args)
        return 0
    except InputError as exc:
        return _fail(2, exc)
    except ConfigurationError as exc:
        return _fail(5, exc)
    except DegenerateDataError as exc:
        return _fail(4, exc)
    except TransformOverflowError as exc:
        return _fail(3, exc)
    except DomainError as exc:
        return _fail(3, exc)
    except OSError as exc:
        return _fail(2, exc)


if __name__ == "__main__":
    sys.exit(main())
