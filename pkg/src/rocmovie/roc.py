"""Classical ROC curves and AUC for binary outcomes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, LengthMismatch, SingleClassOutcome
from .sample import _check_finite, _as_float_array, _frozen, _tie_blocks


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Piecewise-linear ROC curve held as exact integer counts.

    Vertex ``k`` counts the negatives (``fp_counts``) and positives
    (``tp_counts``) whose feature value is strictly above ``thresholds[k]``.
    Vertices run from the highest threshold to the lowest, i.e. from (0, 0)
    to (1, 1); the final threshold is ``-inf``.
    """

    fp_counts: np.ndarray
    tp_counts: np.ndarray
    thresholds: np.ndarray
    n_pos: int
    n_neg: int

    @property
    def fpr(self) -> np.ndarray:
        return self.fp_counts / self.n_neg

    @property
    def tpr(self) -> np.ndarray:
        return self.tp_counts / self.n_pos

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.fpr, self.tpr])

    @property
    def n_vertices(self) -> int:
        return int(self.fp_counts.shape[0])

    @property
    def auc_numerator(self) -> int:
        """Twice the trapezoid area times ``n_neg * n_pos``; an integer."""
        dfp = np.diff(self.fp_counts)
        tp_sum = self.tp_counts[1:] + self.tp_counts[:-1]
        return int(np.dot(dfp, tp_sum))

    @property
    def auc_fraction(self) -> Fraction:
        return Fraction(self.auc_numerator, 2 * self.n_neg * self.n_pos)

    @property
    def auc(self) -> float:
        return self.auc_numerator / (2 * self.n_neg * self.n_pos)

    def same_vertices(self, other: "RocCurve") -> bool:
        return (
            self.n_pos == other.n_pos
            and self.n_neg == other.n_neg
            and np.array_equal(self.fp_counts, other.fp_counts)
            and np.array_equal(self.tp_counts, other.tp_counts)
        )


def _binary_inputs(features, outcomes) -> tuple[np.ndarray, np.ndarray]:
    x = _as_float_array(features, "features")
    y = _as_float_array(outcomes, "outcomes")
    if x.shape[0] != y.shape[0]:
        raise LengthMismatch(f"{x.shape[0]} features but {y.shape[0]} outcomes")
    _check_finite(x)
    _check_finite(y)
    if not np.all((y == 0) | (y == 1)):
        raise InputError("binary outcomes must be 0 or 1")
    pos = y == 1
    n_pos = int(pos.sum())
    if n_pos == 0 or n_pos == y.shape[0]:
        raise SingleClassOutcome("binary outcomes need at least one 0 and one 1")
    return x, pos


def curve_from_groups(
    group_neg: np.ndarray, group_sizes: np.ndarray, thresholds: np.ndarray, n_pos: int, n_neg: int
) -> RocCurve:
    """Assemble a curve from per-threshold-group negative counts.

    Groups must be ordered by decreasing feature value; ``thresholds`` has one
    more entry than there are groups.
    """
    fp = np.zeros(group_neg.shape[0] + 1, dtype=np.int64)
    np.cumsum(group_neg, out=fp[1:])
    tp = np.zeros_like(fp)
    np.cumsum(group_sizes, out=tp[1:])
    tp -= fp
    return RocCurve(_frozen(fp), _frozen(tp), thresholds, n_pos, n_neg)


def descending_groups(x: np.ndarray):
    """Sort order and block layout of ``x`` by decreasing value.

    Returns ``(group_of, sizes, thresholds)`` where ``group_of[i]`` is the
    0-based block of instance ``i`` (block 0 holds the largest value) and
    ``thresholds`` lists the block values followed by ``-inf``.
    """
    order, starts, lengths = _tie_blocks(x)
    g = starts.shape[0]
    group_of = np.empty(x.shape[0], dtype=np.int64)
    group_of[order] = np.repeat(np.arange(g - 1, -1, -1, dtype=np.int64), lengths)
    values = x[order][starts][::-1] + 0.0
    thresholds = _frozen(np.append(values, -np.inf))
    return group_of, lengths[::-1].astype(np.int64), thresholds


def roc_curve(features: Sequence[float], binary_outcomes: Sequence[float]) -> RocCurve:
    """ROC curve of a feature against a 0/1 outcome.

    A feature value strictly above the threshold predicts the positive
    class. One vertex is emitted per distinct feature value plus the
    (1, 1) anchor, so tied values shared across classes give a diagonal
    segment.
    """
    x, pos = _binary_inputs(features, binary_outcomes)
    group_of, sizes, thresholds = descending_groups(x)
    group_neg = np.bincount(group_of[~pos], minlength=sizes.shape[0])
    n_pos = int(pos.sum())
    return curve_from_groups(group_neg, sizes, thresholds, n_pos, x.shape[0] - n_pos)


def pairwise_concordance_twice(x_low: np.ndarray, x_high: np.ndarray, chunk: int = 2048) -> int:
    """``2 * sum s(a, b)`` over ``a`` in ``x_low`` and ``b`` in ``x_high`` by brute force."""
    total = 0
    for start in range(0, x_low.shape[0], chunk):
        a = x_low[start : start + chunk, None]
        total += 2 * int(np.count_nonzero(a < x_high)) + int(np.count_nonzero(a == x_high))
    return total


def auc_pairwise(features: Sequence[float], binary_outcomes: Sequence[float]) -> float:
    """Mann-Whitney form of AUC by explicit enumeration of cross-class pairs.

    Quadratic in the sample size; kept as an oracle for :func:`roc_curve`.
    """
    x, pos = _binary_inputs(features, binary_outcomes)
    x_neg, x_pos = x[~pos], x[pos]
    twice = pairwise_concordance_twice(x_neg, x_pos)
    return twice / (2 * x_neg.shape[0] * x_pos.shape[0])


def concordance_counts(features: Sequence[float], binary_outcomes: Sequence[float]) -> tuple[int, int, int]:
    """Concordant, discordant and feature-tied cross-class pair counts."""
    x, pos = _binary_inputs(features, binary_outcomes)
    neg_sorted = np.sort(x[~pos])
    x_pos = x[pos]
    below = np.searchsorted(neg_sorted, x_pos, side="left")
    not_above = np.searchsorted(neg_sorted, x_pos, side="right")
    n_c = int(below.sum())
    n_d = int((neg_sorted.shape[0] - not_above).sum())
    n_e = int((not_above - below).sum())
    return n_c, n_d, n_e


def somers_d(features: Sequence[float], binary_outcomes: Sequence[float]) -> float:
    """Somers' D of the outcome on the feature: ``(n_c - n_d) / (n_0 n_1)``."""
    n_c, n_d, n_e = concordance_counts(features, binary_outcomes)
    return (n_c - n_d) / (n_c + n_d + n_e)
