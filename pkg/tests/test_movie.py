import hashlib

import numpy as np
import pytest

from _gen import naive_roc, tied_sample
from rocmovie import build_movie, decompose, export_frames, roc_curve, thin_index_set, validate
from rocmovie.errors import InvalidThinningParams, SinkError
from rocmovie.movie import auto_thin, frame_csv, thinning_step
from rocmovie.sample import decompose_values


def test_binary_movie_is_roc_curve():
    x, y = [0.1, 0.4, 0.35, 0.8, 0.35], [0, 0, 1, 1, 0]
    mv = build_movie(validate(x, y))
    assert mv.n_frames == 1
    f = mv.frame(1)
    assert f.curve.same_vertices(roc_curve(x, y))
    assert f.weight == 1.0 and f.relative_weight == 1.0
    assert f.threshold_value == 1.0


def test_perfect_feature_every_frame():
    mv = build_movie(validate([1, 2, 3], [1, 2, 3]))
    assert [f.auc for f in mv.frames] == [1.0, 1.0]


def test_frames_match_independent_construction():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(2, 40))
        x, y = tied_sample(rng, n, feature_levels=2, outcome_levels=2)
        mv = build_movie(validate(x, y))
        z = mv.decomposition.unique_outcomes
        streamed = list(mv.frames)
        assert len(streamed) == z.shape[0] - 1
        for c, f in enumerate(streamed, start=1):
            labels = (y >= z[c]).astype(int)
            fp, tp = naive_roc(x, labels)
            assert f.curve.fp_counts.tolist() == fp and f.curve.tp_counts.tolist() == tp
            assert f.curve.same_vertices(mv.frame(c).curve)
            assert f.auc == f.curve.auc
            assert f.class_index == c and f.threshold_value == z[c]


def test_weights_and_relative_weights():
    rng = np.random.default_rng(3)
    x, y = tied_sample(rng, 80, outcome_levels=4)
    mv = build_movie(validate(x, y))
    assert abs(sum(f.weight for f in mv.frames) - 1.0) <= 1e-12
    rel = [f.relative_weight for f in mv.frames]
    assert max(rel) == 1.0 and min(rel) > 0


@pytest.mark.parametrize(
    "frames, a, s",
    [(7, 3, 3), (10, 10, 1), (35992, 400, 90), (5, 1, 5), (6, 4, 1)],
)
def test_thinning_step(frames, a, s):
    assert thinning_step(frames, a) == s
    assert 1 + (a - 1) * s <= frames


def test_thin_index_set_examples():
    dec = decompose_values(np.arange(8.0))
    assert thin_index_set(dec, 3, 1) == (1, 4, 7)
    dec = decompose_values(np.arange(11.0))
    assert thin_index_set(dec, 10, 1) == tuple(range(1, 11))


def test_thin_adds_heavy_classes():
    y = np.concatenate([np.arange(8.0), np.full(10, 2.0)])
    dec = decompose_values(y)
    assert thin_index_set(dec, 3, 2) == (1, 3, 4, 7)


def test_thinning_bounds_random():
    rng = np.random.default_rng(5)
    for _ in range(200):
        m = int(rng.integers(2, 300))
        counts = rng.geometric(rng.uniform(0.05, 0.9), size=m)
        dec = decompose_values(np.repeat(np.arange(m, dtype=float), counts))
        a = int(rng.integers(1, m))
        b = int(rng.integers(1, 50))
        C = thin_index_set(dec, a, b)
        assert a <= len(C) <= a + b
        assert C[0] == 1 and all(1 <= c <= m - 1 for c in C)


def test_thinning_errors():
    dec = decompose_values(np.arange(5.0))
    with pytest.raises(InvalidThinningParams):
        thin_index_set(dec, 5, 1)
    with pytest.raises(InvalidThinningParams):
        thin_index_set(dec, 2, 0)


def test_thinned_movie_keeps_full_relative_weights():
    y = np.arange(20.0)
    mv = build_movie(validate(y[::-1], y))
    thin = mv.thin(3, 1)
    assert thin.indices == (1, 10, 19)
    assert [f.relative_weight for f in thin.frames] == [mv.relative_weights[c - 1] for c in (1, 10, 19)]
    assert auto_thin(mv, cap=19) is mv
    assert auto_thin(mv, cap=5, a=4, b=1).indices == (1, 7, 13, 19)


def test_frame_csv_header():
    mv = build_movie(validate([1, 2, 3], [0, 0, 1]))
    text = frame_csv(mv.frame(1))
    assert text.splitlines()[:6] == [
        "# threshold=1",
        "# class_index=1",
        "# weight=1",
        "# relative_weight=1",
        "# auc=1",
        "fpr,tpr",
    ]


def _digest(paths):
    return [hashlib.sha256(p.read_bytes()).hexdigest() for p in paths]


def test_export_is_deterministic(tmp_path):
    mv = build_movie(validate([0.3, 0.1, 0.5, 0.2, 0.9], [1, 2, 2, 3, 4]))
    first = export_frames(mv, tmp_path / "a" / "nested")
    second = export_frames(mv, tmp_path / "b")
    assert [p.name for p in first] == [p.name for p in second]
    assert first[0].name == "frame_0001.csv" and first[1].name == "frame_0001.svg"
    assert len(first) == 2 * mv.n_frames
    assert _digest(first) == _digest(second)
    svg = first[1].read_text()
    assert 'viewBox="0 0 1000 700"' in svg


def test_export_single_frame_csv_only(tmp_path):
    mv = build_movie(validate([1, 2], [0, 1]))
    assert [p.name for p in export_frames(mv, tmp_path, svg=False)] == ["frame_0001.csv"]


def test_export_sink_failure(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    mv = build_movie(validate([1, 2], [0, 1]))
    with pytest.raises(SinkError):
        export_frames(mv, blocker / "sub", svg=False)


def test_padded_names_for_many_frames(tmp_path):
    y = np.arange(10001.0)
    mv = build_movie(validate(y, y)).thin(401, 1)
    files = export_frames(mv, tmp_path, svg=False)
    assert len(files) == 401
    assert files[-1].name == "frame_0401.csv"
