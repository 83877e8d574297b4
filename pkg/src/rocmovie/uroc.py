"""Class-count weights and the universal ROC (UROC) curve.

The UROC curve is the vertical average of the movie's ROC curves with
weights proportional to ``N(<=c) * N(>c)``, the number of cross pairs split
by threshold ``c``. Each ROC curve is read as the piecewise-linear
interpolant of its vertices; where a curve is vertical at a grid abscissa
its upper value is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from .errors import GridTooCoarse, MovieWeightMismatch
from .roc import RocCurve
from .sample import ClassDecomposition, _frozen

if TYPE_CHECKING:
    from .movie import RocMovie

DEFAULT_GRID = 1000


@dataclass(frozen=True, eq=False)
class WeightVector:
    numerators: tuple[int, ...]
    denominator: int
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.numerators)

    def fractions(self) -> list[Fraction]:
        return [Fraction(a, self.denominator) for a in self.numerators]


def weights(decomposition: ClassDecomposition) -> WeightVector:
    """Threshold weights ``w_c``, ``c = 1 .. m-1``; they depend on outcomes only.

    Numerators ``N(<=c) * N(>c)`` are summed exactly; the denominator equals
    ``sum_{i<j} (j - i) n_i n_j`` since each pair of classes is split by
    ``j - i`` thresholds.
    """
    counts = [int(v) for v in decomposition.class_counts.tolist()]
    n = sum(counts)
    below = 0
    nums = []
    for c in counts[:-1]:
        below += c
        nums.append(below * (n - below))
    den = sum(nums)
    w = np.array([a / den for a in nums], dtype=np.float64)
    return WeightVector(tuple(nums), den, _frozen(w))


@dataclass(frozen=True, eq=False)
class UrocCurve:
    grid_fpr: np.ndarray
    grid_tpr: np.ndarray
    cpa_from_area: float

    @property
    def grid_size(self) -> int:
        return int(self.grid_fpr.shape[0]) - 1


def sample_curve_on_grid(curve: RocCurve, grid_size: int = DEFAULT_GRID) -> np.ndarray:
    """Ordinates of ``curve`` at ``k / grid_size`` for ``k = 0 .. grid_size``.

    Computed from the integer vertex counts, so the result depends only on
    the vertex list. Endpoints are pinned to 0 and 1.
    """
    if grid_size < 2:
        raise GridTooCoarse(f"grid size must be at least 2, got {grid_size}")
    fp = curve.fp_counts
    tp = curve.tp_counts
    n_neg, n_pos, g = curve.n_neg, curve.n_pos, grid_size
    k = np.arange(g + 1, dtype=np.int64)
    target = k * n_neg  # compare fp/n_neg with k/g as fp*g vs k*n_neg
    scaled = fp * g
    idx = np.searchsorted(scaled, target, side="right") - 1
    nxt = np.minimum(idx + 1, fp.shape[0] - 1)
    dfp = fp[nxt] - fp[idx]
    on_vertex = scaled[idx] == target
    safe = np.where(on_vertex, 1, dfp)
    num = tp[idx] * g * safe + (tp[nxt] - tp[idx]) * (target - scaled[idx])
    out = np.where(on_vertex, tp[idx] / n_pos, num / (n_pos * g * safe))
    out[0] = 0.0
    out[-1] = 1.0
    return out


def uroc_curve(movie: "RocMovie", weight_vector: WeightVector | None = None,
               grid_size: int = DEFAULT_GRID) -> UrocCurve:
    """Weighted vertical average of every frame of an unthinned movie."""
    if grid_size < 2:
        raise GridTooCoarse(f"grid size must be at least 2, got {grid_size}")
    if movie.thinned:
        raise MovieWeightMismatch("UROC curves need the full movie, not a thinned one")
    wv = movie.weights if weight_vector is None else weight_vector
    if len(wv) != movie.n_frames or wv.numerators != movie.weights.numerators:
        raise MovieWeightMismatch(
            f"weight vector of length {len(wv)} does not belong to a movie with {movie.n_frames} frames"
        )
    # accumulate against the integer numerators and divide once, so identical
    # frames average back to themselves exactly
    if movie.n_frames == 1:
        acc = sample_curve_on_grid(movie.frame(1).curve, grid_size)
    else:
        acc = np.zeros(grid_size + 1, dtype=np.float64)
        for num, frame in zip(wv.numerators, movie.frames):
            acc += float(num) * sample_curve_on_grid(frame.curve, grid_size)
        acc /= float(wv.denominator)
    acc[0] = 0.0
    acc[-1] = 1.0
    np.clip(acc, 0.0, 1.0, out=acc)
    fpr = np.arange(grid_size + 1, dtype=np.float64) / grid_size
    return UrocCurve(_frozen(fpr), _frozen(acc), _trapezoid(acc))


def _trapezoid(ordinates: np.ndarray) -> float:
    g = ordinates.shape[0] - 1
    return float(np.sum(ordinates[:-1] + ordinates[1:]) / (2 * g))


def area_under_uroc(curve: UrocCurve) -> float:
    """Trapezoidal area under the gridded UROC curve."""
    return _trapezoid(curve.grid_tpr)
