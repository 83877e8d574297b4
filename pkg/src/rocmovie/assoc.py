"""Spearman's rank correlation and its mid-rank adjusted variant."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import OutOfRange, TiesInOutcomes, TiesPresent
from .sample import PairedSample, doubled_mid_ranks, mid_rank


@dataclass(frozen=True)
class TieCorrection:
    """``V = sum_j (v_j^3 - v_j) / 12`` over the ``p`` tied groups of a sequence."""

    V: Fraction
    p: int


def tie_correction(values) -> TieCorrection:
    groups = mid_rank(values).tie_groups
    total = sum(v**3 - v for _, v in groups)
    return TieCorrection(Fraction(total, 12), len(groups))


def _has_ties(values: np.ndarray) -> bool:
    return np.unique(values).shape[0] != values.shape[0]


def _squared_rank_gap(sample: PairedSample) -> int:
    """``sum (2 mrk(x_i) - 2 rk(y_i))^2``, i.e. four times the usual sum."""
    d = doubled_mid_ranks(sample.features) - doubled_mid_ranks(sample.outcomes)
    return sum(v * v for v in d.tolist())


def spearman_rho(sample: PairedSample, exact: bool = False) -> float | Fraction:
    """Spearman's rho for data without ties in either variable."""
    if _has_ties(sample.features) or _has_ties(sample.outcomes):
        raise TiesPresent("Spearman's rho in rank-difference form needs tie-free data; use CPA instead")
    n = sample.n
    rho = 1 - Fraction(3 * _squared_rank_gap(sample), 2 * n * (n * n - 1))
    return rho if exact else float(rho)


def spearman_rho_mid(sample: PairedSample, exact: bool = False) -> float | Fraction:
    """Mid-rank adjusted Spearman coefficient; feature ties allowed, outcome ties not.

    ``1 - 6 (sum (mrk(x_i) - rk(y_i))^2 + V) / (n (n^2 - 1))``.
    """
    if _has_ties(sample.outcomes):
        raise TiesInOutcomes("the mid-rank adjusted coefficient requires distinct outcomes")
    n = sample.n
    v12 = 12 * tie_correction(sample.features).V
    rho = 1 - (3 * _squared_rank_gap(sample) + v12) / (2 * n * (n * n - 1))
    rho = Fraction(rho)
    return rho if exact else float(rho)


def gaussian_spearman_from_pearson(r: float) -> float:
    """Population Spearman correlation of a bivariate normal with Pearson ``r``."""
    if not -1.0 <= r <= 1.0:
        raise OutOfRange(f"Pearson correlation must lie in [-1, 1], got {r}")
    return 6.0 / math.pi * math.asin(r / 2.0)
