"""CSV ingestion and report assembly for the command line front end."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .assoc import spearman_rho, spearman_rho_mid
from .cpa import c_index, cpa_fast
from .errors import EmptyFile, InputError, MissingColumn, ParseError, RocError
from .movie import build_movie
from .roc import roc_curve, somers_d
from .sample import PairedSample, validate

ALL_METRICS = ("cpa", "cIndex", "auc", "somersD", "spearmanRho", "spearmanRhoMid")
ASSOC_METRICS = ("cpa", "spearmanRho", "spearmanRhoMid", "somersD")
MISSING_TOKENS = frozenset({"", "na", "nan", "null", "none", "."})


@dataclass(frozen=True, eq=False)
class Dataset:
    outcome_column: str
    feature_columns: tuple[str, ...]
    columns: dict[str, np.ndarray]
    negated_features: frozenset[str]
    rejected_rows: int = 0

    @property
    def n(self) -> int:
        return int(self.columns[self.outcome_column].shape[0])

    @property
    def outcomes(self) -> np.ndarray:
        return self.columns[self.outcome_column]

    def feature(self, name: str) -> np.ndarray:
        return self.columns[name]

    def sample(self, name: str) -> PairedSample:
        return validate(self.columns[name], self.outcomes)


def load_csv(path, outcome_column: str, feature_columns: Sequence[str],
             negate: Iterable[str] = ()) -> Dataset:
    """Read the outcome and feature columns of a headed, comma-separated file.

    Rows with an empty or ``NA``-like cell in any referenced column are
    dropped and counted; any other unparsable cell raises ParseError with the
    file line number. Columns named in ``negate`` are sign-flipped once.
    """
    features = tuple(dict.fromkeys(feature_columns))
    negated = frozenset(negate)
    unknown = negated.difference(features)
    if unknown:
        raise InputError(f"--negate names columns that are not features: {sorted(unknown)}")
    wanted = (outcome_column, *[f for f in features if f != outcome_column])

    with open(path, newline="", encoding="utf-8-sig") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if not header or all(not h.strip() for h in header):
            raise EmptyFile(f"{path}: no header row")
        header = [h.strip() for h in header]
        for name in wanted:
            if name not in header:
                raise MissingColumn(name)
        positions = [header.index(name) for name in wanted]
        data: list[list[float]] = [[] for _ in wanted]
        rejected = 0
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            values = []
            missing = False
            for name, pos in zip(wanted, positions):
                cell = row[pos].strip() if pos < len(row) else ""
                if cell.lower() in MISSING_TOKENS:
                    missing = True
                    break
                try:
                    v = float(cell)
                except ValueError:
                    raise ParseError(reader.line_num, name, cell) from None
                if not math.isfinite(v):
                    raise ParseError(reader.line_num, name, cell)
                values.append(v)
            if missing:
                rejected += 1
                continue
            for column, v in zip(data, values):
                column.append(v)

    if not data[0]:
        raise EmptyFile(f"{path}: no usable data rows")
    columns = {name: np.array(col, dtype=np.float64) for name, col in zip(wanted, data)}
    for name in negated:
        columns[name] = -columns[name]
    for arr in columns.values():
        arr.setflags(write=False)
    return Dataset(outcome_column, features, columns, negated, rejected)


def _binary_view(sample: PairedSample) -> np.ndarray | None:
    uniq = np.unique(sample.outcomes)
    if uniq.shape[0] != 2:
        return None
    return (sample.outcomes == uniq[1]).astype(np.int64)


def _has_ties(a: np.ndarray) -> bool:
    return np.unique(a).shape[0] != a.shape[0]


def feature_metrics(sample: PairedSample, metrics: Sequence[str] = ALL_METRICS) -> dict:
    """Requested metrics for one feature; ``None`` where a metric's precondition fails."""
    out: dict = {}
    binary = _binary_view(sample) if {"auc", "somersD"} & set(metrics) else None
    for name in metrics:
        if name == "cpa":
            out[name] = cpa_fast(sample).value
        elif name == "cIndex":
            out[name] = c_index(sample)
        elif name == "auc":
            out[name] = None if binary is None else roc_curve(sample.features, binary).auc
        elif name == "somersD":
            out[name] = None if binary is None else somers_d(sample.features, binary)
        elif name == "spearmanRho":
            tied = _has_ties(sample.features) or _has_ties(sample.outcomes)
            out[name] = None if tied else spearman_rho(sample)
        elif name == "spearmanRhoMid":
            out[name] = None if _has_ties(sample.outcomes) else spearman_rho_mid(sample)
        else:
            raise InputError(f"unknown metric {name!r}")
    return out


def map_features(dataset: Dataset, fn: Callable[[str], dict],
                 workers: int | None = None) -> tuple[dict[str, dict], dict[str, int]]:
    """Apply ``fn`` to every feature on a bounded thread pool.

    Returns the per-feature results in the dataset's feature order and the
    exit code of every feature that failed. A failing feature gets an
    ``error`` message and never suppresses the others.
    """

    def guarded(name: str):
        try:
            result = fn(name)
            result["error"] = None
            return result, 0
        except RocError as exc:
            return {"error": f"{type(exc).__name__}: {exc}"}, exc.exit_code

    names = list(dataset.feature_columns)
    if workers is None:
        workers = min(4, len(names)) or 1
    if workers <= 1 or len(names) <= 1:
        outcomes = [guarded(n) for n in names]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(guarded, names))
    results = {n: r for n, (r, _) in zip(names, outcomes)}
    codes = {n: c for n, (_, c) in zip(names, outcomes) if c}
    return results, codes


def run_metrics(dataset: Dataset, metrics: Sequence[str] = ALL_METRICS, workers: int | None = None,
                failures: dict[str, int] | None = None) -> dict:
    """Per-feature metric report with a fixed key set.

    Exit codes of failed features are written into ``failures`` when given.
    """
    for name in metrics:
        if name not in ALL_METRICS:
            raise InputError(f"unknown metric {name!r}")

    def one(name: str) -> dict:
        return feature_metrics(dataset.sample(name), metrics)

    per_feature, codes = map_features(dataset, one, workers)
    for name in codes:
        entry = {m: None for m in metrics}
        entry["error"] = per_feature[name]["error"]
        per_feature[name] = entry
    if failures is not None:
        failures.update(codes)
    return {
        "outcome": dataset.outcome_column,
        "n": dataset.n,
        "rejectedRows": dataset.rejected_rows,
        "negated": sorted(dataset.negated_features),
        "metrics": list(metrics),
        "features": per_feature,
    }


def auc_by_threshold(dataset: Dataset, feature: str) -> list[tuple[float, float, float]]:
    """Rows ``(z_{c+1}, w_c, AUC_c)`` in increasing threshold order."""
    movie = build_movie(dataset.sample(feature))
    z = movie.decomposition.unique_outcomes[1:].tolist()
    return list(zip(z, movie.weights.weights.tolist(), movie.aucs.tolist()))


def fmt_number(v: float) -> str:
    return format(float(v), ".17g")


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float printed at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "null"
        return fmt_number(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in seq):
            return "[" + ", ".join(to_json(v, indent, _level + 1) for v in seq) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def metrics_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    metrics = report["metrics"]
    writer.writerow(["feature", *metrics, "error"])
    for name, entry in report["features"].items():
        row = [name]
        for m in metrics:
            v = entry.get(m)
            row.append("" if v is None else fmt_number(v))
        row.append(entry.get("error") or "")
        writer.writerow(row)
    return buf.getvalue()


def auc_table_csv(rows: Sequence[tuple[float, float, float]], feature: str | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    head = ["threshold", "weight", "auc"]
    writer.writerow(["feature", *head] if feature is not None else head)
    for z, w, a in rows:
        cells = [fmt_number(z), fmt_number(w), fmt_number(a)]
        writer.writerow([feature, *cells] if feature is not None else cells)
    return buf.getvalue()


def curve_csv(fpr: Sequence[float], tpr: Sequence[float], comments: dict | None = None) -> str:
    lines = [f"# {k}={fmt_number(v) if isinstance(v, float) else v}" for k, v in (comments or {}).items()]
    lines.append("fpr,tpr")
    lines.extend(f"{fmt_number(a)},{fmt_number(b)}" for a, b in zip(fpr, tpr))
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def simulation_csv(columns: Sequence[np.ndarray], names: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row in zip(*(c.tolist() for c in columns)):
        writer.writerow([fmt_number(v) for v in row])
    return buf.getvalue()
