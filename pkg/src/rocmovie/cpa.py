"""Coefficient of predictive ability (CPA) and the C index.

Three routes to CPA are provided and are expected to agree:

* :func:`cpa_fast` - O(n log n) closed form in mid ranks and class indices,
* :func:`cpa_pairwise` - class-distance weighted concordance over all pairs,
* :func:`cpa_covariance` - ratio of class/mid-rank covariances, in floats.

:func:`cpa_weighted_auc` adds the movie view: the weighted mean of the
per-threshold AUCs.

Exact quantities are carried in half units (every term doubled) so that
numerators and denominators are integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateOutcomes, SizeCapExceeded
from .sample import PairedSample, _tie_blocks, decompose, doubled_mid_ranks

PAIRWISE_CAP = 5000
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CpaResult:
    value: float
    numerator: int
    denominator: int
    method: str

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.value


def _dot(a: np.ndarray, b: np.ndarray) -> int:
    """Exact integer dot product.

    Products are formed in int64 when each one fits, then summed in chunks
    small enough that no partial sum can overflow; otherwise Python ints.
    """
    a = a.astype(np.int64)
    b = b.astype(np.int64)
    per_term = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0))
    if per_term == 0:
        return 0
    if per_term >= _INT64_SAFE:
        return sum(x * y for x, y in zip(a.tolist(), b.tolist()))
    prods = a * b
    chunk = _INT64_SAFE // per_term
    if chunk >= prods.shape[0]:
        return int(prods.sum())
    return sum(int(v) for v in np.add.reduceat(prods, np.arange(0, prods.shape[0], chunk)).tolist())


def cpa_fast(sample: PairedSample) -> CpaResult:
    """CPA from mid ranks of the feature and class indices of the outcome.

    Doubled numerator ``sum_i i * sum_k 2 mrk(x_ik) + sum_i i n_i (2 N_<i + n_i - 2n - 1)``
    over doubled denominator ``2 sum_i i n_i (2 N_<i + n_i - n)``.
    """
    n = sample.n
    mrk2 = doubled_mid_ranks(sample.features)
    # walking the outcomes in sorted order gives the per-class rank sums
    # with one gather and a sequential reduction
    order, starts, lengths = _tie_blocks(sample.outcomes)
    rank_sums = np.add.reduceat(mrk2[order], starts)
    counts = lengths.astype(np.int64)
    m = counts.shape[0]
    idx = np.arange(1, m + 1, dtype=np.int64)
    below = starts.astype(np.int64)
    t1 = _dot(idx, rank_sums)
    t2 = _dot(idx * counts, 2 * below + counts - 2 * n - 1)
    den = 2 * _dot(idx * counts, 2 * below + counts - n)
    if den == 0:
        raise DegenerateOutcomes("outcomes have a single class")
    num = t1 + t2
    return CpaResult(num / den, num, den, "fast")


def _pairwise_sums(x: np.ndarray, cl: np.ndarray, weighted: bool, chunk: int = 1024) -> tuple[int, int]:
    num = 0
    den = 0
    for start in range(0, x.shape[0], chunk):
        xa = x[start : start + chunk, None]
        dist = cl[None, :] - cl[start : start + chunk, None]
        upper = dist > 0
        w = np.where(upper, dist if weighted else 1, 0)
        s2 = 2 * (xa < x[None, :]) + (xa == x[None, :])
        num += int(np.sum(w * s2))
        den += 2 * int(np.sum(w))
    return num, den


def _check_cap(n: int, cap: int | None) -> None:
    if cap is not None and n > cap:
        raise SizeCapExceeded(f"pairwise route is quadratic; n={n} exceeds the cap of {cap}")


def cpa_pairwise(sample: PairedSample, cap: int | None = PAIRWISE_CAP) -> CpaResult:
    """CPA as a weighted probability of concordance, by enumerating all pairs.

    Each pair with outcome classes ``i < j`` contributes ``(j - i) s(x_i, x_j)``.
    Quadratic; ``cap=None`` lifts the size guard.
    """
    _check_cap(sample.n, cap)
    cl = decompose(sample).class_of
    num, den = _pairwise_sums(sample.features, cl, weighted=True)
    return CpaResult(num / den, num, den, "pairwise")


def cpa_covariance(sample: PairedSample) -> CpaResult:
    """CPA from ``cov(cl(Y), mrk(X)) / cov(cl(Y), mrk(Y))`` in floating point."""
    cl = decompose(sample).class_of.astype(np.float64)
    rx = doubled_mid_ranks(sample.features) / 2.0
    ry = doubled_mid_ranks(sample.outcomes) / 2.0
    cc = cl - cl.mean()
    cov_x = float(np.dot(cc, rx - rx.mean()))
    cov_y = float(np.dot(cc, ry - ry.mean()))
    if cov_y == 0.0:
        raise DegenerateOutcomes("outcome class and rank do not vary")
    value = 0.5 * (cov_x / cov_y + 1.0)
    frac = Fraction(value)
    return CpaResult(value, frac.numerator, frac.denominator, "covariance")


def cpa_weighted_auc(sample: PairedSample) -> CpaResult:
    """CPA as the weighted mean of the ROC movie's AUC values.

    ``w_c AUC_c = U_c / D``, so the exact value is the sum of the per-frame
    Mann-Whitney counts over the weight denominator; ``value`` is the float
    sum of ``w_c * AUC_c``.
    """
    from .movie import build_movie

    movie = build_movie(sample)
    num = int(sum(int(v) for v in movie.auc_numerators.tolist()))
    den = 2 * movie.weights.denominator
    value = float(np.sum(movie.weights.weights * movie.aucs))
    return CpaResult(value, num, den, "weightedAuc")


def count_strict_inversions(seq: np.ndarray) -> int:
    """Number of pairs ``i < j`` with ``seq[i] > seq[j]`` for non-negative ints.

    Bottom-up merge sort; each level counts, for every element of a right
    block, the larger elements of its left partner with one global
    ``searchsorted`` over row-offset keys.
    """
    n = seq.shape[0]
    if n < 2:
        return 0
    top = int(seq.max()) + 1
    size = 1 << (n - 1).bit_length()
    a = np.full(size, top, dtype=np.int64)
    a[:n] = seq
    total = 0
    w = 1
    while w < size:
        rows = size // (2 * w)
        blocks = a.reshape(rows, 2 * w)
        offsets = (np.arange(rows, dtype=np.int64) * (top + 1))[:, None]
        left = (blocks[:, :w] + offsets).ravel()
        right = (blocks[:, w:] + offsets).ravel()
        pos = np.searchsorted(left, right, side="right") - np.repeat(np.arange(rows, dtype=np.int64) * w, w)
        total += int(np.sum(w - pos))
        a = np.sort(blocks, axis=1).ravel()
        w *= 2
    return total


def _tied_pairs(keys: np.ndarray) -> int:
    _, counts = np.unique(keys, return_counts=True)
    counts = counts.astype(np.int64)
    return int(np.sum(counts * (counts - 1) // 2))


def c_index_fraction(sample: PairedSample) -> Fraction:
    """Exact C index: unweighted concordance over pairs with distinct outcomes."""
    dec = decompose(sample)
    cl = dec.class_of
    _, xr = np.unique(sample.features, return_inverse=True)
    xr = xr.astype(np.int64).ravel()
    # within a class, larger x first, so only cross-class pairs can ascend
    order = np.lexsort((-xr, cl))
    seq = xr[order]
    n = sample.n
    inversions = count_strict_inversions(seq)
    ties_x = _tied_pairs(xr)
    ties_both = _tied_pairs(cl * (int(xr.max()) + 1) + xr)
    ascending = n * (n - 1) // 2 - inversions - ties_x
    counts = dec.class_counts.astype(np.int64)
    pairs = (n * n - int(np.sum(counts * counts))) // 2
    return Fraction(2 * ascending + (ties_x - ties_both), 2 * pairs)


def c_index(sample: PairedSample) -> float:
    """Harrell's C: probability of concordance over pairs with distinct outcomes."""
    f = c_index_fraction(sample)
    return f.numerator / f.denominator


def c_index_pairwise(sample: PairedSample, cap: int | None = PAIRWISE_CAP) -> Fraction:
    """Brute-force C index, kept as an oracle."""
    _check_cap(sample.n, cap)
    cl = decompose(sample).class_of
    num, den = _pairwise_sums(sample.features, cl, weighted=False)
    return Fraction(num, den)
