import numpy as np
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from diffinv import linalg

P = 3
mats = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.integers(0, P - 1)))


@given(mats)
def test_rank_nullity(a):
    null = linalg.nullspace(a, P)
    assert linalg.rank(a, P) + len(null) == a.shape[1]
    if len(null):
        assert not ((a @ null.T) % P).any()
        assert linalg.rank(null, P) == len(null)


@given(mats)
def test_rref_is_reduced(a):
    r, piv = linalg.rref(a, P)
    for row, c in enumerate(piv):
        assert r[row, c] == 1
        assert np.count_nonzero(r[:, c]) == 1
    assert not r[len(piv):].any()


@given(mats, st.data())
def test_solve_consistent_system(a, data):
    x0 = data.draw(arrays(np.int64, a.shape[1], elements=st.integers(0, P - 1)))
    b = (a @ x0) % P
    x, unique = linalg.solve(a, b, P)
    assert x is not None
    assert np.array_equal((a @ x) % P, b)
    assert unique == (linalg.rank(a, P) == a.shape[1])


def test_solve_inconsistent():
    a = np.array([[1, 0], [1, 0]])
    x, _ = linalg.solve(a, np.array([0, 1]), P)
    assert x is None


def test_reduce_against():
    ech, piv = linalg.rref(np.array([[1, 2, 0], [0, 0, 1]]), P)
    res = linalg.reduce_against(np.array([2, 1, 2]), ech, piv, P)
    assert not res.any()
