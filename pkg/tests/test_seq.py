from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorentz_seq.seq import (
    DISTRIBUTIONS,
    Seq,
    cesaro_prefix,
    compensated_cumsum,
    decreasing_rearrangement,
    indicator,
    partial_sums,
    random_decreasing,
)

values = st.lists(st.floats(0.0, 1e6, allow_nan=False, allow_infinity=False), max_size=40)


def test_seq_rejects_bad_entries():
    with pytest.raises(ValueError):
        Seq([1.0, -0.5])
    with pytest.raises(ValueError):
        Seq([float("nan")])
    with pytest.raises(ValueError):
        Seq([float("inf")])


def test_seq_is_immutable():
    x = Seq([3, 2, 1])
    with pytest.raises(ValueError):
        x.values[0] = 5.0
    assert x.N == 3 and len(Seq([])) == 0


@pytest.mark.parametrize("inp,out", [((1, 3, 2), (3, 2, 1)), ((5, 5, 5), (5, 5, 5)), ((), ())])
def test_rearrangement_examples(inp, out):
    assert decreasing_rearrangement(Seq(inp)).tolist() == list(out)


def test_rearrangement_takes_absolute_values():
    assert decreasing_rearrangement([-4.0, 1.0, -2.0]).tolist() == [4.0, 2.0, 1.0]


def test_partial_sums_examples():
    ps = partial_sums(Seq([3, 2, 1]))
    assert ps.sums.tolist() == [3, 5, 6] and ps.total == 6
    assert partial_sums(indicator(5)).sums.tolist() == [1, 2, 3, 4, 5]
    assert partial_sums(Seq([])).total == 0.0
    assert partial_sums(indicator(1)).sums.tolist() == [1.0]


def test_cesaro_prefix_examples():
    np.testing.assert_allclose(cesaro_prefix(Seq([1, 0, 0]), 4), [1, 1 / 2, 1 / 3, 1 / 4], rtol=1e-15)
    np.testing.assert_allclose(cesaro_prefix(Seq([1, 1]), 3), [1, 1, 2 / 3], rtol=1e-15)
    assert cesaro_prefix(Seq([]), 2).tolist() == [0.0, 0.0]
    with pytest.raises(ValueError):
        cesaro_prefix(Seq([1]), 0)


def test_indicator():
    assert indicator(1).tolist() == [1.0]
    assert indicator(3).tolist() == [1.0, 1.0, 1.0]
    with pytest.raises(ValueError):
        indicator(0)


@pytest.mark.parametrize("dist", DISTRIBUTIONS)
def test_random_decreasing_contract(dist):
    a = random_decreasing(5, 7, dist)
    assert a == random_decreasing(5, 7, dist)
    for n in (1, 2, 17, 300):
        x = random_decreasing(n, 3, dist)
        assert 1 <= x.N <= n
        assert np.all(np.diff(x.values) <= 0) and np.all(x.values >= 0)
    one = random_decreasing(1, 0, "uniform-gaps")
    assert one.N == 1 and one[0] >= 0


def test_random_decreasing_rejects():
    with pytest.raises(ValueError):
        random_decreasing(0, 0)
    with pytest.raises(ValueError):
        random_decreasing(4, 0, "gaussian")


def test_step_distribution_is_piecewise_constant():
    x = random_decreasing(200, 11, "step")
    assert len(np.unique(x.values)) < x.N


def test_compensated_cumsum_is_exact_on_hard_input():
    # 1 followed by many tiny terms: naive cumsum drops them
    v = np.array([1.0] + [1e-17] * 10000)
    exact = float(Fraction(1) + 10000 * Fraction(1e-17))
    assert compensated_cumsum(v)[-1] == exact
    assert np.cumsum(v)[-1] != exact


@given(values)
@settings(max_examples=200, deadline=None)
def test_compensated_cumsum_prefixes_correctly_rounded(vals):
    v = np.array(vals, dtype=np.float64)
    got = compensated_cumsum(v)
    acc = Fraction(0)
    for i, t in enumerate(vals):
        acc += Fraction(t)
        assert abs(Fraction(got[i]) - acc) <= 2 * abs(acc) * Fraction(2) ** -53


@given(values)
@settings(max_examples=200, deadline=None)
def test_rearrangement_idempotent_and_multiset(vals):
    x = decreasing_rearrangement(vals)
    assert decreasing_rearrangement(x) == x
    assert sorted(x.tolist()) == sorted(vals)


@given(st.integers(1, 300), st.integers(0, 10 ** 6), st.sampled_from(DISTRIBUTIONS))
@settings(max_examples=100, deadline=None)
def test_partial_sums_concave_and_cesaro_nonincreasing(n, seed, dist):
    x = random_decreasing(n, seed, dist)
    X = partial_sums(x).sums
    inc = np.diff(np.concatenate(([0.0], X)))
    assert np.all(np.diff(inc) <= 1e-12 * X[-1])
    c = cesaro_prefix(x, x.N + 5)
    assert np.all(np.diff(c) <= 1e-12 * c[0])
