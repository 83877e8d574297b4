"""Command line interface.

Exit status: 0 success, 2 input error, 3 degenerate data, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .errors import InputError, RocError
from .gaussian import COLUMNS, GaussianSpec, sample_gaussian
from .io import (
    ALL_METRICS,
    ASSOC_METRICS,
    Dataset,
    auc_by_threshold,
    auc_table_csv,
    curve_csv,
    load_csv,
    map_features,
    metrics_csv,
    run_metrics,
    simulation_csv,
    to_json,
    write_text,
)
from .movie import DEFAULT_THIN_A, DEFAULT_THIN_B, DEFAULT_THIN_CAP, auto_thin, build_movie, export_frames
from .roc import roc_curve, somers_d
from .uroc import DEFAULT_GRID, uroc_curve

log = logging.getLogger("rocmovie")


def _safe_name(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name) or "feature"


def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("data", help="input CSV file with a header row")
    p.add_argument("--outcome", required=True, help="outcome column")
    p.add_argument("--features", required=True, nargs="+", help="one or more feature columns")
    p.add_argument("--negate", nargs="*", default=[], metavar="FEATURE",
                   help="features whose sign is flipped on load")
    p.add_argument("--workers", type=int, default=None, help="thread pool size (default: up to 4)")


def _add_output_args(p: argparse.ArgumentParser, out_dir_required: bool = False) -> None:
    p.add_argument("--out-dir", required=out_dir_required, default=None, help="directory for files and figures")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="format of the printed report")
    p.add_argument("--figure-format", choices=("svg", "png", "pdf"), default="svg")
    p.add_argument("--no-figures", action="store_true", help="skip matplotlib figures")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rocmovie",
        description="ROC movies, UROC curves and the coefficient of predictive ability (CPA).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cpa", help="CPA, C index and, where defined, AUC, Somers' D and Spearman coefficients")
    _add_data_args(p)
    _add_output_args(p)

    p = sub.add_parser("assoc", help="rank association measures next to CPA")
    _add_data_args(p)
    _add_output_args(p)

    p = sub.add_parser("roc", help="classical ROC curve per feature for a binary (or binarised) outcome")
    _add_data_args(p)
    _add_output_args(p)
    p.add_argument("--threshold", type=float, default=None,
                   help="binarise the outcome as outcome >= THRESHOLD (required unless it has two values)")

    p = sub.add_parser("movie", help="write ROC movie frames (CSV and SVG) per feature")
    _add_data_args(p)
    _add_output_args(p, out_dir_required=True)
    p.add_argument("--thin-a", type=int, default=DEFAULT_THIN_A, help="size of the regular frame grid")
    p.add_argument("--thin-b", type=int, default=DEFAULT_THIN_B, help="keep classes with at least n/b members")
    p.add_argument("--thin-cap", type=int, default=DEFAULT_THIN_CAP, help="thin only movies longer than this")
    p.add_argument("--no-svg", action="store_true", help="write frame CSV files only")

    p = sub.add_parser("uroc", help="UROC curve per feature")
    _add_data_args(p)
    _add_output_args(p)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID, help="number of grid subintervals")

    p = sub.add_parser("auc-table", help="AUC and weight at every outcome threshold")
    _add_data_args(p)
    _add_output_args(p)

    p = sub.add_parser("simulate", help="draw the four-variate Gaussian example as CSV (y,x1,x2,x3)")
    p.add_argument("--n", type=int, default=400, help="sample size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    p.add_argument("--out-dir", default=None, help="write simulate.csv into this directory")
    return parser


def _load(args) -> Dataset:
    return load_csv(args.data, args.outcome, args.features, args.negate)


def _emit(text: str, args, filename: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if getattr(args, "out_dir", None):
        write_text(Path(args.out_dir) / filename, text if text.endswith("\n") else text + "\n")


def _exit_code(dataset: Dataset, failures: dict[str, int]) -> int:
    if failures and len(failures) == len(dataset.feature_columns):
        return max(failures.values())
    return 0


def _cmd_metrics(args, metrics) -> int:
    dataset = _load(args)
    failures: dict[str, int] = {}
    report = run_metrics(dataset, metrics, workers=args.workers, failures=failures)
    stem = "report" if args.command == "cpa" else "assoc"
    if args.format == "json":
        _emit(to_json(report), args, f"{stem}.json")
    else:
        _emit(metrics_csv(report), args, f"{stem}.csv")
    return _exit_code(dataset, failures)


def _binary_outcome(dataset: Dataset, threshold: float | None) -> np.ndarray:
    y = dataset.outcomes
    if threshold is not None:
        return (y >= threshold).astype(np.int64)
    uniq = np.unique(y)
    if uniq.shape[0] != 2:
        raise InputError(f"outcome has {uniq.shape[0]} distinct values; pass --threshold to binarise it")
    return (y == uniq[1]).astype(np.int64)


def _cmd_roc(args) -> int:
    dataset = _load(args)
    labels = _binary_outcome(dataset, args.threshold)
    curves = {}

    def one(name: str) -> dict:
        curve = roc_curve(dataset.feature(name), labels)
        curves[name] = curve
        entry = {"auc": curve.auc, "somersD": somers_d(dataset.feature(name), labels),
                 "vertices": curve.n_vertices, "file": None}
        if args.out_dir:
            path = Path(args.out_dir) / f"roc_{_safe_name(name)}.csv"
            write_text(path, curve_csv(curve.fpr.tolist(), curve.tpr.tolist(), {"auc": curve.auc}))
            entry["file"] = str(path)
        return entry

    results, failures = map_features(dataset, one, args.workers)
    if args.out_dir and curves and not args.no_figures:
        from .plotting import plot_roc_curves

        ordered = {n: curves[n] for n in dataset.feature_columns if n in curves}
        plot_roc_curves(ordered, Path(args.out_dir) / f"roc.{args.figure_format}")
    report = {"outcome": dataset.outcome_column, "threshold": args.threshold, "features": results}
    _emit_report(report, args, "roc", ("auc", "somersD", "vertices"))
    return _exit_code(dataset, failures)


def _emit_report(report: dict, args, stem: str, columns: Sequence[str]) -> None:
    if args.format == "json":
        _emit(to_json(report), args, f"{stem}.json")
        return
    lines = [",".join(["feature", *columns, "error"])]
    for name, entry in report["features"].items():
        cells = [name]
        for c in columns:
            v = entry.get(c)
            if v is None:
                cells.append("")
            elif isinstance(v, bool):
                cells.append(str(v).lower())
            else:
                cells.append(format(v, ".17g") if isinstance(v, float) else str(v))
        cells.append((entry.get("error") or "").replace(",", ";"))
        lines.append(",".join(cells))
    _emit("\n".join(lines) + "\n", args, f"{stem}.csv")


def _cmd_movie(args) -> int:
    dataset = _load(args)
    out = Path(args.out_dir)

    def one(name: str) -> dict:
        movie = auto_thin(build_movie(dataset.sample(name)), args.thin_cap, args.thin_a, args.thin_b)
        files = export_frames(movie, out / _safe_name(name), svg=not (args.no_svg or args.no_figures))
        return {
            "classes": movie.decomposition.m,
            "frames": len(movie.indices),
            "thinned": movie.thinned,
            "directory": str(out / _safe_name(name)),
            "files": len(files),
        }

    results, failures = map_features(dataset, one, args.workers)
    report = {"outcome": dataset.outcome_column, "features": results}
    _emit_report(report, args, "movie", ("classes", "frames", "thinned", "files"))
    return _exit_code(dataset, failures)


def _cmd_uroc(args) -> int:
    dataset = _load(args)
    curves = {}

    def one(name: str) -> dict:
        from .cpa import cpa_fast

        sample = dataset.sample(name)
        curve = uroc_curve(build_movie(sample), grid_size=args.grid)
        curves[name] = curve
        cpa = cpa_fast(sample).value
        entry = {"cpa": cpa, "areaUnderUroc": curve.cpa_from_area, "file": None}
        if args.out_dir:
            path = Path(args.out_dir) / f"uroc_{_safe_name(name)}.csv"
            write_text(path, curve_csv(curve.grid_fpr.tolist(), curve.grid_tpr.tolist(), {"cpa": cpa}))
            entry["file"] = str(path)
        return entry

    results, failures = map_features(dataset, one, args.workers)
    if args.out_dir and curves and not args.no_figures:
        from .plotting import plot_uroc_curves

        ordered = {n: curves[n] for n in dataset.feature_columns if n in curves}
        plot_uroc_curves(ordered, Path(args.out_dir) / f"uroc.{args.figure_format}")
    report = {"outcome": dataset.outcome_column, "grid": args.grid, "features": results}
    _emit_report(report, args, "uroc", ("cpa", "areaUnderUroc"))
    return _exit_code(dataset, failures)


def _cmd_auc_table(args) -> int:
    dataset = _load(args)
    tables = {}

    def one(name: str) -> dict:
        rows = auc_by_threshold(dataset, name)
        tables[name] = rows
        return {"rows": [{"threshold": z, "weight": w, "auc": a} for z, w, a in rows]}

    results, failures = map_features(dataset, one, args.workers)
    if args.format == "json":
        _emit(to_json({"outcome": dataset.outcome_column, "features": results}), args, "auc_table.json")
    else:
        text = auc_table_csv([], feature="")
        for name in dataset.feature_columns:
            if name in tables:
                text += auc_table_csv(tables[name], feature=name).split("\n", 1)[1]
        _emit(text, args, "auc_table.csv")
    if args.out_dir and tables and not args.no_figures:
        from .plotting import plot_auc_by_threshold

        ordered = {n: tables[n] for n in dataset.feature_columns if n in tables}
        plot_auc_by_threshold(ordered, Path(args.out_dir) / f"auc_by_threshold.{args.figure_format}")
    for name, message in ((n, results[n]["error"]) for n in failures):
        log.warning("%s: %s", name, message)
    return _exit_code(dataset, failures)


def _cmd_simulate(args) -> int:
    if args.n < 1:
        raise InputError("--n must be positive")
    columns = sample_gaussian(GaussianSpec(args.n, args.seed))
    text = simulation_csv(columns, COLUMNS)
    if args.output:
        write_text(args.output, text)
    elif args.out_dir:
        write_text(Path(args.out_dir) / "simulate.csv", text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "cpa": lambda a: _cmd_metrics(a, ALL_METRICS),
    "assoc": lambda a: _cmd_metrics(a, ASSOC_METRICS),
    "roc": _cmd_roc,
    "movie": _cmd_movie,
    "uroc": _cmd_uroc,
    "auc-table": _cmd_auc_table,
    "simulate": _cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except RocError as exc:
        _fail(exc)
        return exc.exit_code
    except OSError as exc:
        _fail(exc)
        return 4


def _fail(exc: BaseException) -> None:
    print(f"rocmovie: error: {exc}", file=sys.stderr)

if __name__ == "__main__":
    sys.exit(main())
