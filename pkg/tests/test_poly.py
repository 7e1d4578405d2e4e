import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from levisphere.poly import SparsePoly
from strategies import polys


def test_constructor_merges_and_drops_zero():
    f = SparsePoly(2, [((1, 0), 2), ((1, 0), -2), ((0, 1), 3)])
    assert len(f) == 1 and f.coeff((0, 1)) == 3
    assert f.coeff((5, 5)) == 0
    with pytest.raises(ValueError):
        SparsePoly(2, {(1,): 1})
    with pytest.raises(ValueError):
        SparsePoly(2, {(-1, 0): 1})


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(polys(n=n), polys(n=n), polys(n=n))))
def test_ring_axioms(fgh):
    f, g, h = fgh
    n = f.n
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == SparsePoly.zero(n)
    assert f * SparsePoly.one(n) == f
    assert f * 3 == f + f + f


@given(polys())
def test_swap_and_variable(f):
    for i in range(1, f.n):
        assert f.swap(i).swap(i) == f
        assert f.times_variable(i) == f * SparsePoly.variable(i, f.n)


def test_powers_and_degree():
    x = SparsePoly.variable(1, 2)
    y = SparsePoly.variable(2, 2)
    f = (x + y) ** 3
    assert f.coeff((2, 1)) == 3 and f.total_degree() == 3 and f.is_homogeneous()
    assert not (x + SparsePoly.one(2)).is_homogeneous()
    assert f.max_abs_coeff() == 3


@given(polys(coeff=10**6))
def test_array_round_trip(f):
    exps, coeffs = f.to_arrays()
    assert exps.dtype == np.int64 and exps.shape == (len(f), f.n)
    assert SparsePoly.from_arrays(exps, coeffs) == f


def test_from_arrays_drops_zero_rows():
    exps = np.array([[1, 0], [0, 1]], dtype=np.int64)
    f = SparsePoly.from_arrays(exps, np.array([0, 5], dtype=np.int64))
    assert f == SparsePoly.monomial((0, 1), 5)
    assert all(type(c) is int for _, c in f.items())


@given(polys(coeff=10**30))
def test_json_round_trip(f):
    assert SparsePoly.from_json(f.to_json(), f.n) == f


def test_hash_matches_equality():
    a = SparsePoly(2, {(1, 0): 1, (0, 1): 1})
    b = SparsePoly(2, {(0, 1): 1, (1, 0): 1})
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
