"""Prime-field linear algebra against independent oracles."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from matroid_depth.core import fano, uniform
from matroid_depth.errors import InvalidInput
from matroid_depth.gfield import (
    SUPPORTED_PRIMES,
    as_field_matrix,
    inverse_mod,
    rank,
    row_space_key,
    rref,
    span_size,
    vector_matroid,
)


def matrices(p, max_dim=3):
    dims = st.integers(min_value=1, max_value=max_dim)
    return dims.flatmap(
        lambda r: dims.flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


def test_validate_prime():
    for p in SUPPORTED_PRIMES:
        as_field_matrix([[1]], p)
    for bad in (1, 4, 6, 17):
        with pytest.raises(InvalidInput):
            as_field_matrix([[1]], bad)


def test_inverse_mod():
    for p in SUPPORTED_PRIMES:
        for x in range(1, p):
            assert x * inverse_mod(x, p) % p == 1


def test_rref_gf2():
    m, pivots = rref([[1, 1, 0], [1, 0, 1]], 2)
    assert pivots == (0, 1)
    assert m.tolist() == [[1, 0, 1], [0, 1, 1]]


def test_rref_gf3_singular():
    # rows are proportional over GF(3): (2,1) = 2 * (1,2)
    m, pivots = rref([[2, 1], [1, 2]], 3)
    assert pivots == (0,)
    assert m.tolist() == [[1, 2], [0, 0]]
    assert rank([[2, 1], [1, 2]], 3) == 1


def test_rref_identity_fixed_point():
    eye = np.eye(3, dtype=np.int64)
    m, pivots = rref(eye, 5)
    assert (m == eye).all()
    assert pivots == (0, 1, 2)


@given(st.sampled_from((2, 3, 5)), st.data())
def test_rref_idempotent(p, data):
    a = data.draw(matrices(p))
    m, pivots = rref(a, p)
    m2, pivots2 = rref(m, p)
    assert (m == m2).all()
    assert pivots == pivots2


@given(st.sampled_from((2, 3, 5)), st.data())
def test_span_size_matches_rank(p, data):
    a = data.draw(matrices(p))
    assert span_size(a, p) == p ** rank(a, p)


@given(st.sampled_from((2, 3)), st.data())
def test_row_space_key_invariance(p, data):
    a = as_field_matrix(data.draw(matrices(p)), p)
    key = row_space_key(a, p)
    assert row_space_key(a[::-1], p) == key
    if a.shape[0] >= 2:
        b = a.copy()
        b[0] = (b[0] + (p - 1) * b[1]) % p
        assert row_space_key(b, p) == key


@given(st.sampled_from((2, 3)), st.data())
def test_vector_matroid_axioms(p, data):
    vector_matroid(data.draw(matrices(p)), p).validate()


def test_vector_matroid_fixtures():
    assert vector_matroid([[1, 1]], 2) == uniform(1, 2)
    assert vector_matroid([[1, 0, 1], [0, 1, 1]], 2) == uniform(2, 3)
    assert vector_matroid([[1, 0, 1, 1], [0, 1, 1, 2]], 3) == uniform(2, 4)
    cols = [[1, 2, 3, 4, 5, 6, 7][i] for i in range(7)]
    a = [[(c >> b) & 1 for c in cols] for b in range(3)]
    assert vector_matroid(a, 2) == fano()


def test_vector_matroid_zero_columns():
    m = vector_matroid([[0, 1], [0, 0]], 2)
    assert m.loops() == 0b01
    assert m.rank() == 1
