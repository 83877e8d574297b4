"""ROC movies: one classical ROC curve per nontrivial outcome threshold.

The feature is sorted once. Frame ``c`` treats classes ``<= c`` as negative,
so moving to frame ``c + 1`` only moves the members of class ``c + 1`` from
the positive to the negative population. AUCs for all frames come from a
telescoping mid-rank identity in O(n log n) total; vertex lists are built on
demand, incrementally when frames are visited in order.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import InvalidThinningParams, SinkError
from .roc import RocCurve, curve_from_groups, descending_groups
from .sample import ClassDecomposition, PairedSample, _frozen, decompose, doubled_mid_ranks
from .uroc import WeightVector, weights

DEFAULT_THIN_A = 400
DEFAULT_THIN_B = 100
DEFAULT_THIN_CAP = 500


@dataclass(frozen=True, eq=False)
class MovieFrame:
    threshold_value: float
    class_index: int
    weight: float
    relative_weight: float
    curve: RocCurve
    auc: float


@dataclass(frozen=True, eq=False)
class RocMovie:
    decomposition: ClassDecomposition
    weights: WeightVector
    auc_numerators: np.ndarray  # 2 * U_c, the Mann-Whitney count of frame c, doubled
    retained: tuple[int, ...] | None
    _group_of: np.ndarray = field(repr=False)
    _group_sizes: np.ndarray = field(repr=False)
    _thresholds: np.ndarray = field(repr=False)
    _by_class: np.ndarray = field(repr=False)
    _class_starts: np.ndarray = field(repr=False)

    @property
    def n_frames(self) -> int:
        """Number of frames in the full movie, ``m - 1``."""
        return self.decomposition.m - 1

    @property
    def thinned(self) -> bool:
        return self.retained is not None

    @property
    def indices(self) -> tuple[int, ...]:
        if self.retained is None:
            return tuple(range(1, self.n_frames + 1))
        return self.retained

    @cached_property
    def pair_counts(self) -> np.ndarray:
        return np.asarray(self.weights.numerators, dtype=np.int64)

    @cached_property
    def aucs(self) -> np.ndarray:
        """AUC of every frame of the full movie (thinning does not apply)."""
        return self.auc_numerators / (2 * self.pair_counts)

    @cached_property
    def relative_weights(self) -> np.ndarray:
        w = self.weights.weights
        return w / w.max()

    @property
    def frames(self) -> "FrameSequence":
        return FrameSequence(self, self.indices)

    def thin(self, a: int = DEFAULT_THIN_A, b: int = DEFAULT_THIN_B) -> "RocMovie":
        return replace(self, retained=thin_index_set(self.decomposition, a, b))

    def _negatives_through(self, c: int) -> np.ndarray:
        members = self._by_class[: self._class_starts[c]]
        return np.bincount(self._group_of[members], minlength=self._group_sizes.shape[0])

    def _frame(self, c: int, group_neg: np.ndarray) -> MovieFrame:
        n_neg = int(self._class_starts[c])
        n_pos = self.decomposition.n - n_neg
        curve = curve_from_groups(group_neg, self._group_sizes, self._thresholds, n_pos, n_neg)
        return MovieFrame(
            threshold_value=float(self.decomposition.unique_outcomes[c]),
            class_index=c,
            weight=float(self.weights.weights[c - 1]),
            relative_weight=float(self.relative_weights[c - 1]),
            curve=curve,
            auc=float(self.aucs[c - 1]),
        )

    def frame(self, c: int) -> MovieFrame:
        """Frame for class index ``c`` in ``1 .. m-1`` (binary event ``y >= z_{c+1}``)."""
        if not 1 <= c <= self.n_frames:
            raise IndexError(f"class index {c} outside 1..{self.n_frames}")
        return self._frame(c, self._negatives_through(c))

    def iter_frames(self, indices: Sequence[int] | None = None) -> Iterator[MovieFrame]:
        """Yield frames in increasing class order, updating counts between them."""
        targets = self.indices if indices is None else indices
        group_neg = np.zeros(self._group_sizes.shape[0], dtype=np.int64)
        done = 0
        for c in targets:
            if c < done:
                raise ValueError("frame indices must be increasing")
            moved = self._by_class[self._class_starts[done] : self._class_starts[c]]
            np.add.at(group_neg, self._group_of[moved], 1)
            done = c
            yield self._frame(c, group_neg.copy())


class FrameSequence(Sequence):
    """Lazy, read-only view of a movie's frames."""

    def __init__(self, movie: RocMovie, indices: tuple[int, ...]):
        self._movie = movie
        self._indices = indices

    def __len__(self) -> int:
        return len(self._indices)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self._movie.frame(c) for c in self._indices[k]]
        return self._movie.frame(self._indices[k])

    def __iter__(self) -> Iterator[MovieFrame]:
        return self._movie.iter_frames(self._indices)

    @property
    def class_indices(self) -> tuple[int, ...]:
        return self._indices


def frame_auc_numerators(decomposition: ClassDecomposition, features: np.ndarray) -> np.ndarray:
    """Doubled Mann-Whitney counts ``2 U_c`` for every threshold ``c``.

    Moving class ``c`` to the negative side changes the count by
    ``sum_{i in c} (n - mrk_i) - n_c N(<c) - n_c (n_c - 1) / 2``;
    pairs between class ``c`` and lower classes cancel out.
    """
    n = decomposition.n
    counts = decomposition.class_counts
    class_of = decomposition.class_of
    mrk2 = doubled_mid_ranks(features)
    if n * (n + 1) < 2**53:
        rank_sums = np.bincount(class_of, weights=mrk2, minlength=decomposition.m + 1)[1:].astype(np.int64)
    else:
        order = np.argsort(class_of, kind="stable")
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        rank_sums = np.add.reduceat(mrk2[order], starts)
    below = np.concatenate([[0], np.cumsum(counts)[:-1]])
    step = 2 * n * counts - rank_sums - 2 * counts * below - counts * (counts - 1)
    return np.cumsum(step)[:-1]


def build_movie(sample: PairedSample) -> RocMovie:
    """Build the ROC movie of ``sample``; frames are materialised lazily."""
    dec = decompose(sample)
    group_of, sizes, thresholds = descending_groups(sample.features)
    by_class = np.argsort(dec.class_of, kind="stable")
    class_starts = np.concatenate([[0], np.cumsum(dec.class_counts)]).astype(np.int64)
    return RocMovie(
        decomposition=dec,
        weights=weights(dec),
        auc_numerators=_frozen(frame_auc_numerators(dec, sample.features)),
        retained=None,
        _group_of=_frozen(group_of),
        _group_sizes=_frozen(sizes),
        _thresholds=thresholds,
        _by_class=_frozen(by_class),
        _class_starts=_frozen(class_starts),
    )


def thinning_step(n_frames: int, a: int) -> int:
    """Spacing ``s`` of the regular index grid ``1, 1 + s, ..., 1 + (a-1) s``.

    The largest ``s`` with ``1 + (a-1) s <= m - 1``; when ``m - 1 < 1 + a s``
    also holds this is the unique solution of both inequalities.
    """
    if a == 1:
        return n_frames
    return (n_frames - 1) // (a - 1)


def thin_index_set(decomposition: ClassDecomposition, a: int = DEFAULT_THIN_A,
                   b: int = DEFAULT_THIN_B) -> tuple[int, ...]:
    """Indices of the frames kept when thinning a long movie.

    Union of a regular grid of ``a`` indices starting at 1 and every class
    holding at least ``n / b`` instances.
    """
    n_frames = decomposition.m - 1
    if a < 1 or b < 1:
        raise InvalidThinningParams(f"a and b must be positive, got a={a}, b={b}")
    if a > n_frames:
        raise InvalidThinningParams(f"a={a} exceeds the number of frames {n_frames}")
    s = thinning_step(n_frames, a)
    grid = {1 + k * s for k in range(a)}
    counts = decomposition.class_counts[:n_frames]
    heavy = np.flatnonzero(counts * b >= decomposition.n) + 1
    return tuple(sorted(grid.union(int(c) for c in heavy)))


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def frame_csv(frame: MovieFrame) -> str:
    lines = [
        f"# threshold={_fmt(frame.threshold_value)}",
        f"# class_index={frame.class_index}",
        f"# weight={_fmt(frame.weight)}",
        f"# relative_weight={_fmt(frame.relative_weight)}",
        f"# auc={_fmt(frame.auc)}",
        "fpr,tpr",
    ]
    lines.extend(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(frame.curve.fpr.tolist(), frame.curve.tpr.tolist()))
    return "\n".join(lines) + "\n"


def export_frames(movie: RocMovie, sink: str | Path, svg: bool = True, prefix: str = "frame") -> list[Path]:
    """Write one CSV (and optionally one SVG) per frame, numbered in playback order."""
    out = Path(sink)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise SinkError(f"cannot create {out}: {exc}") from exc
    width = max(4, len(str(len(movie.indices))))
    written: list[Path] = []
    if svg:
        from .plotting import render_frame_svg
    for k, frame in enumerate(movie.frames, start=1):
        stem = f"{prefix}_{k:0{width}d}"
        path = out / f"{stem}.csv"
        try:
            path.write_text(frame_csv(frame), encoding="utf-8")
            written.append(path)
            if svg:
                svg_path = out / f"{stem}.svg"
                render_frame_svg(frame, svg_path)
                written.append(svg_path)
        except OSError as exc:
            raise SinkError(f"cannot write {path}: {exc}") from exc
    return written


def auto_thin(movie: RocMovie, cap: int = DEFAULT_THIN_CAP, a: int = DEFAULT_THIN_A,
              b: int = DEFAULT_THIN_B) -> RocMovie:
    """Thin ``movie`` only when it has more than ``cap`` frames."""
    if movie.n_frames <= cap:
        return movie
    return movie.thin(min(a, movie.n_frames), b)


__all__ = [
    "MovieFrame",
    "RocMovie",
    "auto_thin",
    "build_movie",
    "export_frames",
    "frame_auc_numerators",
    "frame_csv",
    "thin_index_set",
    "thinning_step",
]

