"""Matplotlib figures for ROC curves, movie frames and UROC curves.

Figures are built on bare :class:`~matplotlib.figure.Figure` objects rather
than pyplot, so rendering is safe from worker threads. SVG output is made
byte-stable by fixing the id salt and dropping the date stamp.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib
from matplotlib.figure import Figure

from .roc import RocCurve
from .uroc import UrocCurve

# 1000 x 700 user units in the SVG viewBox (matplotlib writes 72 units per inch)
FRAME_SIZE_IN = (1000 / 72, 700 / 72)
FRAME_AXES = (0.1, 0.1, 0.8 * 0.7, 0.8)  # square plotting region in figure fractions

_RC = {
    "svg.hashsalt": "rocmovie",
    "svg.fonttype": "none",
    "path.simplify": False,
    "font.size": 14,
    "axes.linewidth": 1.0,
}

_COLORS = ("#1b6ca8", "#d1495b", "#edae49", "#00798c", "#30638e", "#003d5b", "#66a182")


def _metadata(path: Path) -> dict:
    suffix = path.suffix.lower()
    if suffix == ".svg":
        return {"Date": None, "Creator": "rocmovie"}
    if suffix == ".pdf":
        return {"CreationDate": None, "Creator": "rocmovie", "Producer": "rocmovie"}
    if suffix == ".png":
        return {"Software": "rocmovie"}
    return {}


def _save(fig: Figure, path) -> Path:
    path = Path(path)
    fig.savefig(path, metadata=_metadata(path))
    return path


def _unit_axes(fig: Figure, rect=FRAME_AXES):
    ax = fig.add_axes(rect)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_aspect("equal")
    ax.plot([0, 1], [0, 1], color="0.75", lw=1.0, ls="--")
    ax.set_xlabel("False positive rate")
    ax.set_ylabel("True positive rate")
    return ax


def render_frame_svg(frame, path, label: str | None = None) -> Path:
    """One movie frame: the ROC curve with threshold, relative weight and AUC."""
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=FRAME_SIZE_IN, dpi=72)
        ax = _unit_axes(fig)
        ax.plot(frame.curve.fpr, frame.curve.tpr, color=_COLORS[0], lw=2.0)
        ax.text(0.02, 0.97, f"{frame.threshold_value:.6g}", transform=ax.transAxes, va="top", ha="left")
        ax.text(0.5, 0.97, f"{frame.relative_weight:.2f}", transform=ax.transAxes, va="top", ha="center")
        ax.text(0.97, 0.03, f"AUC {frame.auc:.3f}", transform=ax.transAxes, va="bottom", ha="right")
        if label:
            ax.set_title(label)
        return _save(fig, path)


def plot_roc_curves(curves: Mapping[str, RocCurve], path, title: str | None = None) -> Path:
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(6.5, 6.0), dpi=100)
        ax = _unit_axes(fig, (0.14, 0.12, 0.8, 0.8))
        for k, (name, curve) in enumerate(curves.items()):
            ax.plot(curve.fpr, curve.tpr, color=_COLORS[k % len(_COLORS)], lw=1.8,
                    label=f"{name} (AUC {curve.auc:.3f})")
        ax.legend(loc="lower right", fontsize=10, frameon=False)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_uroc_curves(curves: Mapping[str, UrocCurve], path, title: str | None = None) -> Path:
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(6.5, 6.0), dpi=100)
        ax = _unit_axes(fig, (0.14, 0.12, 0.8, 0.8))
        for k, (name, curve) in enumerate(curves.items()):
            ax.plot(curve.grid_fpr, curve.grid_tpr, color=_COLORS[k % len(_COLORS)], lw=1.8,
                    label=f"{name} (CPA {curve.cpa_from_area:.3f})")
        ax.legend(loc="lower right", fontsize=10, frameon=False)
        ax.set_title(title or "UROC")
        return _save(fig, path)


def plot_auc_by_threshold(tables: Mapping[str, Sequence[tuple[float, float, float]]], path) -> Path:
    """AUC of each binarised problem against its threshold, one line per feature."""
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(8.0, 5.0), dpi=100)
        ax = fig.add_axes((0.1, 0.13, 0.85, 0.8))
        for k, (name, rows) in enumerate(tables.items()):
            z = [r[0] for r in rows]
            auc = [r[2] for r in rows]
            ax.plot(z, auc, color=_COLORS[k % len(_COLORS)], lw=1.2, marker="." if len(z) < 60 else None,
                    label=name)
        ax.axhline(0.5, color="0.75", lw=1.0, ls="--")
        ax.set_xlabel("Threshold")
        ax.set_ylabel("AUC")
        ax.set_ylim(0.0, 1.0)
        ax.legend(fontsize=10, frameon=False)
        return _save(fig, path)
