import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rocmovie import decompose, mid_rank, s_function, validate
from rocmovie.errors import DegenerateOutcomes, LengthMismatch, NonFiniteValue, TooFewInstances

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
small_ints = st.integers(-5, 5).map(float)


def test_validate_minimal():
    s = validate([1, 2], [0, 1])
    assert s.n == 2
    assert not s.features.flags.writeable


@pytest.mark.parametrize(
    "x, y, err",
    [
        ([1, 2, 3], [5, 5, 5], DegenerateOutcomes),
        ([1, 2], [0, 1, 1], LengthMismatch),
        ([1], [0], TooFewInstances),
    ],
)
def test_validate_errors(x, y, err):
    with pytest.raises(err):
        validate(x, y)


def test_non_finite_index_is_one_based():
    with pytest.raises(NonFiniteValue) as info:
        validate([1, float("nan")], [0, 1])
    assert info.value.index == 2
    with pytest.raises(NonFiniteValue):
        validate([1, 2], [0, float("inf")])


def test_decompose_examples():
    d = decompose(validate([0, 0, 0, 0], [3, 1, 3, 2]))
    assert d.unique_outcomes.tolist() == [1, 2, 3]
    assert d.class_counts.tolist() == [1, 1, 2]
    assert d.class_of.tolist() == [3, 1, 3, 2]
    d = decompose(validate([0, 0], [0, 1]))
    assert d.m == 2 and d.class_counts.tolist() == [1, 1]
    d = decompose(validate([0, 0, 0, 0], [2, 2, 2, 7]))
    assert d.unique_outcomes.tolist() == [2, 7]
    assert d.class_counts.tolist() == [3, 1]


def test_mid_rank_examples():
    assert mid_rank([10, 20, 30]).mid_ranks.tolist() == [1, 2, 3]
    assert mid_rank([5, 5, 1]).mid_ranks.tolist() == [2.5, 2.5, 1]
    rv = mid_rank([1, 2, 9, 9, 9, 9, 9])
    assert rv.mid_ranks.tolist()[2:] == [5.0] * 5
    assert rv.tie_groups == ((9.0, 5),)
    assert rv.tie_group_count == 1


def test_signed_zero_counts_as_tie():
    assert mid_rank([-0.0, 0.0]).mid_ranks.tolist() == [1.5, 1.5]


@given(st.lists(small_ints, min_size=1, max_size=60))
def test_rank_sum_exact(values):
    rv = mid_rank(values)
    n = len(values)
    assert int(rv.doubled.sum()) == n * (n + 1)


@given(st.lists(finite, min_size=1, max_size=40))
def test_mid_ranks_follow_value_order(values):
    r = mid_rank(values).mid_ranks
    v = np.array(values)
    for i in range(len(values)):
        assert np.all((v > v[i]) == (r > r[i]))
        assert np.all((v == v[i]) == (r == r[i]))


@given(finite, finite)
def test_s_symmetry(a, b):
    assert s_function(a, b) + s_function(b, a) == 1.0


def test_s_values():
    assert s_function(1, 2) == 1.0
    assert s_function(3, 3) == 0.5
    assert s_function(2, 1) == 0.0


@given(st.lists(small_ints, min_size=2, max_size=30))
def test_s_matches_on_mid_ranks(values):
    r = mid_rank(values).mid_ranks
    for i in range(len(values)):
        for j in range(len(values)):
            assert s_function(values[i], values[j]) == s_function(r[i], r[j])


@given(st.lists(small_ints, min_size=2, max_size=40).filter(lambda v: len(set(v)) > 1))
def test_monotone_map_invariance(values):
    v = np.array(values)
    mapped = np.exp(v / 3.0) * 7 - 2
    assert np.array_equal(mid_rank(v).doubled, mid_rank(mapped).doubled)
    d1 = decompose(validate(v, v))
    d2 = decompose(validate(v, mapped))
    assert np.array_equal(d1.class_of, d2.class_of)


def test_signed_zero_reported_as_zero():
    for y in ([-0.0, 0.0, 1.0], [0.0, -0.0, 1.0]):
        d = decompose(validate([1, 2, 3], y))
        assert d.class_counts.tolist() == [2, 1]
        assert str(d.unique_outcomes[0]) == "0.0"
