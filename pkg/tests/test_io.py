import json

import numpy as np
import pytest

from rocmovie import cpa_fast, validate
from rocmovie.errors import EmptyFile, InputError, MissingColumn, ParseError
from rocmovie.io import (
    ALL_METRICS,
    Dataset,
    auc_by_threshold,
    feature_metrics,
    load_csv,
    metrics_csv,
    run_metrics,
    simulation_csv,
    to_json,
)


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_load_basic(tmp_path):
    p = write(tmp_path, "y,x,z\n1,0.5,3\n2,0.1,4\n3,0.9,5\n")
    ds = load_csv(p, "y", ["x"])
    assert ds.n == 3
    assert ds.feature("x").tolist() == [0.5, 0.1, 0.9]
    assert ds.outcomes.tolist() == [1, 2, 3]


def test_missing_column(tmp_path):
    p = write(tmp_path, "y,x\n1,2\n")
    with pytest.raises(MissingColumn) as info:
        load_csv(p, "y", ["bilirubin"])
    assert info.value.exit_code == 2


def test_parse_error_row(tmp_path):
    p = write(tmp_path, "y,x\n1,2\n2,abc\n")
    with pytest.raises(ParseError) as info:
        load_csv(p, "y", ["x"])
    assert info.value.row == 3 and info.value.column == "x"
    p = write(tmp_path, "y,x\n1,inf\n", "inf.csv")
    with pytest.raises(ParseError):
        load_csv(p, "y", ["x"])


def test_missing_values_rejected(tmp_path):
    p = write(tmp_path, "y,x\n1,2\n2,NA\n,3\n4,5\n")
    ds = load_csv(p, "y", ["x"])
    assert ds.n == 2 and ds.rejected_rows == 2


def test_empty(tmp_path):
    with pytest.raises(EmptyFile):
        load_csv(write(tmp_path, ""), "y", ["x"])
    with pytest.raises(EmptyFile):
        load_csv(write(tmp_path, "y,x\n", "h.csv"), "y", ["x"])


def test_negate_once(tmp_path):
    p = write(tmp_path, "y,x\n1,3\n2,1\n3,2\n4,2\n")
    raw = load_csv(p, "y", ["x"])
    neg = load_csv(p, "y", ["x"], negate=["x"])
    assert neg.feature("x").tolist() == [-3, -1, -2, -2]
    a = cpa_fast(raw.sample("x")).fraction
    b = cpa_fast(neg.sample("x")).fraction
    assert a + b == 1
    with pytest.raises(InputError):
        load_csv(p, "y", ["x"], negate=["y"])


def test_feature_metrics_binary():
    m = feature_metrics(validate([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]))
    assert m["auc"] == m["cpa"] == m["cIndex"] == 0.75
    assert m["somersD"] == 0.5
    assert m["spearmanRho"] is None and m["spearmanRhoMid"] is None


def test_feature_metrics_spearman():
    m = feature_metrics(validate([2, 1, 3], [1, 2, 3]))
    assert m["spearmanRho"] == 0.5 == m["spearmanRhoMid"]
    assert m["auc"] is None


def test_report_schema_and_isolation(tmp_path):
    p = write(tmp_path, "y,good,flat,tied\n1,1,5,1\n2,2,5,1\n3,3,5,2\n")
    ds = load_csv(p, "y", ["good", "flat", "tied"])
    failures = {}
    rep = run_metrics(ds, failures=failures)
    assert list(rep) == ["outcome", "n", "rejectedRows", "negated", "metrics", "features"]
    assert list(rep["features"]) == ["good", "flat", "tied"]
    for entry in rep["features"].values():
        assert list(entry) == [*ALL_METRICS, "error"]
    assert rep["features"]["good"]["cpa"] == 1.0
    assert rep["features"]["flat"]["cpa"] == 0.5
    assert failures == {}
    assert json.loads(to_json(rep)) == json.loads(json.dumps(rep))
    assert metrics_csv(rep).splitlines()[0] == "feature,cpa,cIndex,auc,somersD,spearmanRho,spearmanRhoMid,error"


def test_failing_feature_isolated():
    y = np.array([1.0, 2.0])
    ds = Dataset("y", ("x", "short"), {"y": y, "x": y.copy(), "short": np.array([1.0])}, frozenset())
    failures = {}
    rep = run_metrics(ds, failures=failures)
    assert rep["features"]["x"]["cpa"] == 1.0
    assert rep["features"]["short"]["cpa"] is None
    assert "LengthMismatch" in rep["features"]["short"]["error"]
    assert failures == {"short": 2}


def test_json_precision():
    assert to_json(0.1) == "0.10000000000000001"
    assert to_json({"a": [1, 2.5, None]}) == '{\n  "a": [1, 2.5, null]\n}'


def test_auc_by_threshold(tmp_path):
    p = write(tmp_path, "y,x\n0,1\n1,2\n0,3\n")
    rows = auc_by_threshold(load_csv(p, "y", ["x"]), "x")
    assert rows == [(1.0, 1.0, 0.5)]
    p = write(tmp_path, "y,x\n1,1\n2,2\n3,3\n4,4\n", "p.csv")
    rows = auc_by_threshold(load_csv(p, "y", ["x"]), "x")
    assert [r[0] for r in rows] == [2, 3, 4]
    assert [r[2] for r in rows] == [1.0, 1.0, 1.0]
    assert [round(r[1], 12) for r in rows] == [0.3, 0.4, 0.3]


def test_simulation_round_trip(tmp_path):
    from rocmovie import GaussianSpec, sample_gaussian

    cols = sample_gaussian(GaussianSpec(50, seed=7))
    p = write(tmp_path, simulation_csv(cols, ("y", "x1", "x2", "x3")))
    ds = load_csv(p, "y", ["x1", "x2", "x3"])
    assert np.array_equal(ds.outcomes, cols[0])
    assert np.array_equal(ds.feature("x3"), cols[3])
    assert to_json(run_metrics(ds)) == to_json(run_metrics(load_csv(p, "y", ["x1", "x2", "x3"])))
