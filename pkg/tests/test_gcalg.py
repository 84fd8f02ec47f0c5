from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import elements, homogeneous
from diffinv.gcalg import (GCElement, GCMonomial, RankMismatchError, bidegree_basis, bidegree_dim, format_element,
                           from_vector, mask_product_sign, parse_element, sign_normalize, to_vector)

x = [None] + [GCElement.x(i) for i in (1, 2, 3)]
y = [None] + [GCElement.y(i) for i in (1, 2, 3)]


@pytest.mark.koszul
@given(st.integers(1, 3), st.integers(1, 3))
def test_odd_generators_anticommute(i, j):
    assert y[i] * y[j] == -(y[j] * y[i])
    assert (y[i] * y[i]).is_zero()


@pytest.mark.koszul
@given(st.lists(st.integers(1, 3), max_size=4))
def test_sign_normalize_matches_product(word):
    mask, sign = sign_normalize(word)
    prod = GCElement.one()
    for i in word:
        prod = prod * y[i]
    if sign == 0:
        assert prod.is_zero()
    else:
        assert prod == GCElement.monomial(GCMonomial((0, 0, 0), mask), sign)


@pytest.mark.koszul
@given(st.integers(0, 7), st.integers(0, 7))
def test_mask_sign_agrees_with_sorting(m1, m2):
    word = [i + 1 for i in range(3) if m1 >> i & 1] + [i + 1 for i in range(3) if m2 >> i & 1]
    assert mask_product_sign(m1, m2) == sign_normalize(word)[1]


@pytest.mark.koszul
@given(elements(), elements(), elements())
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@pytest.mark.koszul
@given(st.data(), st.integers(0, 2), st.integers(0, 3), st.integers(0, 2), st.integers(0, 3))
def test_graded_commutativity(data, xa, ya, xb, yb):
    a = data.draw(homogeneous((xa, ya)))
    b = data.draw(homogeneous((xb, yb)))
    assert a * b == (b * a).scale((-1) ** (ya * yb))


@given(elements())
def test_parse_format_roundtrip(f):
    assert parse_element(format_element(f)) == f


def test_parse_applies_odd_order_sign():
    assert parse_element("y2*y1") == parse_element("-y1*y2")
    assert parse_element("y1*y1").is_zero()
    assert parse_element("4*x1-x1") == GCElement.zero()
    assert str(parse_element("2*x2*y3*y1")) == "x2*y1*y3"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_element("x4", n=3)
    with pytest.raises(ValueError):
        parse_element("x1+")
    with pytest.raises(ValueError):
        parse_element("z1")


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        GCElement({GCMonomial((1, 0), 0): 1}, n=3)
    with pytest.raises(RankMismatchError):
        GCElement.x(1, n=2) + GCElement.x(1, n=3)


@pytest.mark.parametrize("bd", [(0, 0), (2, 1), (5, 2), (4, 3)])
def test_bidegree_dim_formula(bd):
    assert bidegree_dim(bd, 3) == comb(bd[0] + 2, 2) * comb(3, bd[1])
    assert len(set(bidegree_basis(bd, 3))) == bidegree_dim(bd, 3)


@given(st.data())
def test_vector_roundtrip(data):
    f = data.draw(homogeneous((3, 1)))
    v = to_vector(f, (3, 1))
    assert from_vector(v, (3, 1), 3, 3) == f
    assert np.all((v >= 0) & (v < 3))


def test_basis_order_is_graded_lex():
    basis = bidegree_basis((2, 0), 3)
    assert [format_element(GCElement.monomial(m)) for m in basis] == \
        ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]
    assert [m.mask for m in bidegree_basis((0, 1), 3)] == [1, 2, 4]


def test_bidegree_of_product():
    f = x[1] ** 2 * y[2]
    assert tuple(f.bidegree) == (2, 1)
    assert (x[1] + y[1]).is_homogeneous() is False
