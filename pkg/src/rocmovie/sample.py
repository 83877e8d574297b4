"""Validated paired samples, outcome classes and mid ranks.

Mid ranks are kept as integers scaled by two (``2 * mrk``) so that every
downstream sum is exact. Ties are detected by plain float equality; no
tolerance is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateOutcomes,
    InputError,
    LengthMismatch,
    NonFiniteValue,
    TooFewInstances,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _as_float_array(values, name: str) -> np.ndarray:
    try:
        arr = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} must be a sequence of real numbers") from exc
    if arr.ndim != 1:
        raise InputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


def _check_finite(arr: np.ndarray) -> None:
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise NonFiniteValue(int(bad[0]) + 1)


@dataclass(frozen=True, eq=False)
class PairedSample:
    """Feature/outcome pairs ``(x_i, y_i)``, checked by :func:`validate`."""

    features: np.ndarray
    outcomes: np.ndarray

    @property
    def n(self) -> int:
        return int(self.features.shape[0])

    def __len__(self) -> int:
        return self.n


def validate(features: Sequence[float], outcomes: Sequence[float]) -> PairedSample:
    """Check and freeze a paired sample.

    Raises LengthMismatch, TooFewInstances, NonFiniteValue (1-based position,
    features checked before outcomes) or DegenerateOutcomes when every
    outcome is the same value.
    """
    x = _as_float_array(features, "features")
    y = _as_float_array(outcomes, "outcomes")
    if x.shape[0] != y.shape[0]:
        raise LengthMismatch(f"{x.shape[0]} features but {y.shape[0]} outcomes")
    if x.shape[0] < 2:
        raise TooFewInstances(f"need at least 2 instances, got {x.shape[0]}")
    _check_finite(x)
    _check_finite(y)
    if np.all(y == y[0]):
        raise DegenerateOutcomes("all outcomes are equal; at least two distinct values are required")
    return PairedSample(_frozen(x), _frozen(y))


def _tie_blocks(values: np.ndarray):
    """Sort order plus the start offset and length of each block of equal values.

    Members of a block all receive the same rank or class downstream, so the
    order inside a block never reaches any output and an unstable sort is fine.
    """
    order = np.argsort(values)
    ordered = values[order]
    n = ordered.shape[0]
    if n == 0:
        return order, np.zeros(0, np.int64), np.zeros(0, np.int64)
    change = np.empty(n, dtype=bool)
    change[0] = True
    np.not_equal(ordered[1:], ordered[:-1], out=change[1:])
    starts = np.flatnonzero(change)
    lengths = np.diff(np.append(starts, n))
    return order, starts, lengths


@dataclass(frozen=True, eq=False)
class ClassDecomposition:
    """Distinct outcome values ``z_1 < ... < z_m`` with their counts.

    ``class_of`` holds 1-based class indices, so ``class_of[i] == j`` exactly
    when ``outcomes[i] == unique_outcomes[j - 1]``.
    """

    unique_outcomes: np.ndarray
    class_counts: np.ndarray
    class_of: np.ndarray

    @property
    def m(self) -> int:
        return int(self.unique_outcomes.shape[0])

    @property
    def n(self) -> int:
        return int(self.class_of.shape[0])


def decompose_values(values: np.ndarray) -> ClassDecomposition:
    order, starts, lengths = _tie_blocks(values)
    class_of = np.empty(values.shape[0], dtype=np.int64)
    class_of[order] = np.repeat(np.arange(1, starts.shape[0] + 1, dtype=np.int64), lengths)
    uniq = values[order][starts] + 0.0  # -0.0 and 0.0 share a class; report it as 0.0
    return ClassDecomposition(_frozen(uniq), _frozen(lengths.astype(np.int64)), _frozen(class_of))


def decompose(sample: PairedSample) -> ClassDecomposition:
    """Group the outcomes of ``sample`` into classes."""
    return decompose_values(sample.outcomes)


@dataclass(frozen=True, eq=False)
class RankVector:
    """Mid ranks stored doubled, so every entry is an exact integer.

    ``tie_groups`` lists ``(value, multiplicity)`` for each group of two or
    more equal values, in increasing order of value.
    """

    doubled: np.ndarray
    tie_groups: tuple[tuple[float, int], ...]

    @property
    def mid_ranks(self) -> np.ndarray:
        return self.doubled / 2.0

    @property
    def tie_group_count(self) -> int:
        return len(self.tie_groups)

    @property
    def n(self) -> int:
        return int(self.doubled.shape[0])


def doubled_mid_ranks(values: np.ndarray) -> np.ndarray:
    """``2 * mrk(v_i)`` for a finite float array, as int64."""
    order, starts, lengths = _tie_blocks(values)
    # positions start+1 .. start+length average to (2*start + length + 1) / 2
    out = np.empty(values.shape[0], dtype=np.int64)
    out[order] = np.repeat(2 * starts + lengths + 1, lengths)
    return out


def mid_rank(values: Sequence[float]) -> RankVector:
    """Mid ranks of ``values`` with tied groups enumerated."""
    v = _as_float_array(values, "values")
    if v.shape[0] == 0:
        raise InputError("mid ranks need at least one value")
    _check_finite(v)
    order, starts, lengths = _tie_blocks(v)
    doubled = np.empty(v.shape[0], dtype=np.int64)
    doubled[order] = np.repeat(2 * starts + lengths + 1, lengths)
    ordered = v[order]
    groups = tuple(
        (float(ordered[s]) + 0.0, int(k)) for s, k in zip(starts.tolist(), lengths.tolist()) if k > 1
    )
    return RankVector(_frozen(doubled), groups)


def s_function(x: float, x_other: float) -> float:
    """1 if ``x < x_other``, 0.5 on a tie, 0 otherwise."""
    if x < x_other:
        return 1.0
    if x == x_other:
        return 0.5
    return 0.0
