import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from dtwsearch import (
    DimensionMismatch,
    SeriesTooShort,
    TimeSeries,
    distance_matrix,
    point_distance,
    z_normalize,
)
from oracles import naive_distance_matrix

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


def test_point_distance_examples():
    assert point_distance([0.0], [2.0]) == 2.0
    assert point_distance([0.0, 0.0], [3.0, 4.0]) == 5.0
    assert point_distance([1.0, 1.0], [1.0, 1.0]) == 0.0


def test_point_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        point_distance([0.0], [1.0, 2.0])


def test_distance_matrix_worked_example():
    m = distance_matrix(TimeSeries(values=[0.0, 1.0, 3.0]), TimeSeries(values=[0.0, 2.0]))
    assert m.entries.tolist() == [[0.0, 2.0], [1.0, 1.0], [3.0, 1.0]]


def test_distance_matrix_constant_and_degenerate():
    m = distance_matrix(TimeSeries(values=[5.0, 5.0]), TimeSeries(values=[5.0, 5.0]))
    assert np.all(m.entries == 0.0) and m.entries.shape == (2, 2)
    m1 = distance_matrix(TimeSeries(values=[[1.0, 2.0]]), TimeSeries(values=[[4.0, 6.0]]))
    assert m1.entries.shape == (1, 1) and m1.entries[0, 0] == 5.0


def test_distance_matrix_rejects_dim_mismatch():
    with pytest.raises(DimensionMismatch):
        distance_matrix(TimeSeries(values=np.zeros((3, 2))), TimeSeries(values=np.zeros((3, 3))))


@given(
    hnp.arrays(np.float64, st.tuples(st.integers(2, 12), st.integers(1, 3)), elements=finite),
    hnp.arrays(np.float64, st.integers(2, 12), elements=finite),
)
def test_distance_matrix_matches_naive_and_is_symmetric(uv, wcol):
    wv = np.repeat(wcol[:, None], uv.shape[1], axis=1)
    u, w = TimeSeries(values=uv), TimeSeries(values=wv)
    m_uw = distance_matrix(u, w).entries
    m_wu = distance_matrix(w, u).entries
    assert np.allclose(m_uw, naive_distance_matrix(uv, wv), atol=1e-12)
    assert np.array_equal(m_uw, m_wu.T)


@given(st.lists(st.tuples(finite, finite), min_size=3, max_size=3))
def test_point_distance_triangle_inequality(points):
    a, b, c = (np.array(p) for p in points)
    assert point_distance(a, c) <= point_distance(a, b) + point_distance(b, c) + 1e-12


def test_z_normalize_examples():
    out = z_normalize(TimeSeries(values=[0.0, 2.0]))
    assert np.allclose(out.values.ravel(), [-1.0, 1.0])
    const = z_normalize(TimeSeries(values=[7.0, 7.0, 7.0]))
    assert np.all(const.values == 0.0)
    # mean 2, population sd sqrt(2/3)
    out3 = z_normalize(TimeSeries(values=[1.0, 2.0, 3.0]))
    sd = math.sqrt(2.0 / 3.0)
    expected = [(1 - 2) / sd, 0.0, (3 - 2) / sd]
    assert np.allclose(out3.values.ravel(), expected, atol=1e-12)
    assert np.allclose(out3.values.ravel(), [-1.2247, 0.0, 1.2247], atol=1e-4)


def test_z_normalize_too_short():
    with pytest.raises(SeriesTooShort):
        z_normalize(TimeSeries(values=[1.0]))


@given(hnp.arrays(np.float64, st.tuples(st.integers(2, 30), st.integers(1, 3)), elements=finite))
def test_z_normalize_moments_and_idempotence(vals):
    out = z_normalize(TimeSeries(values=vals))
    for d in range(vals.shape[1]):
        col = out.values[:, d]
        if np.ptp(vals[:, d]) == 0:
            assert np.all(col == 0.0)
        elif np.any(col != 0.0):
            assert abs(col.mean()) < 1e-9
            assert abs(col.std() - 1.0) < 1e-9
    twice = z_normalize(out)
    assert np.allclose(twice.values, out.values, atol=1e-9)
