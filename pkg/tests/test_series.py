import pytest
from hypothesis import given, strategies as st

from diffinv.series import (IntPolynomial, NotFreeError, RationalSeries, format_hsop_form, format_polynomial, molien,
                            poly_gcd, reconstruct_from_dims, rewrite_over_hsop, series_over_hsop)

D = 20
polys = st.lists(st.integers(-5, 5), max_size=6).map(IntPolynomial)


@given(polys, polys, polys)
def test_polynomial_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a) == IntPolynomial()


@given(polys, polys)
def test_exact_division(a, b):
    if b:
        assert (a * b).exact_div(b) == a


def test_gcd_and_reduction():
    one_minus_t = IntPolynomial([1, -1])
    assert poly_gcd(one_minus_t * IntPolynomial([1, 1]), one_minus_t ** 2) in (one_minus_t, -one_minus_t)
    r = RationalSeries(IntPolynomial([1, 1]), IntPolynomial([1, 0, -1]))
    assert r == RationalSeries(IntPolynomial([1]), one_minus_t)
    assert r.denominator(0) == 1


def test_series_expansion():
    assert series_over_hsop(IntPolynomial([1]), [1, 1]).expand(4) == [1, 2, 3, 4, 5]
    s_g = series_over_hsop(IntPolynomial([1, 0, 0, 0, 0, 0, 1]), [2, 3, 4])
    assert s_g.expand(8) == [1, 0, 1, 1, 2, 1, 4, 2, 5]


def test_rewrite_not_free():
    with pytest.raises(NotFreeError):
        rewrite_over_hsop(RationalSeries(IntPolynomial([1]), IntPolynomial([1, -1, -1])), [2])


def test_reconstruct_needs_enough_terms():
    with pytest.raises(NotFreeError):
        reconstruct_from_dims([1, 0, 1], [2, 3, 4])


def test_formatting():
    assert format_polynomial(IntPolynomial([0, 1, 1, 2, 1, 1])) == "t+t^2+2*t^3+t^4+t^5"
    assert format_hsop_form(IntPolynomial([0, 1, 1]), [2, 2, 2]) == "(t+t^2)/(1-t^2)^3"
    assert format_hsop_form(IntPolynomial([1, 0, 0, 0, 0, 0, 1]), [2, 3, 4]) == "(1+t^6)/((1-t^2)(1-t^3)(1-t^4))"


def test_molien_relative(setup):
    m = molien(setup.Hbar, character=setup.chi_bar)
    assert m == series_over_hsop(IntPolynomial([0, 1, 1]), [2, 2, 2])
    assert rewrite_over_hsop(m, [2, 3, 4]) == IntPolynomial([0, 1, 1, 2, 1, 1])
    assert molien(setup.H, setup.rho_H, setup.chi) == m


def test_molien_rejects_modular(setup):
    with pytest.raises(ArithmeticError):
        molien(setup.G, setup.rho)


def test_molien_inverse_character_convention(setup):
    # chi_bar takes values +-1, so both conventions agree here
    assert molien(setup.Hbar, character=setup.chi_bar, inverse_character=True) == \
        molien(setup.Hbar, character=setup.chi_bar)


@pytest.mark.molien
@pytest.mark.parametrize("character", ["trivial", "chi"])
def test_molien_matches_brute_force(setup, character):
    action = setup.action("Hbar", character)
    dims = [action.fixed_space((x, 0)).dim for x in range(D + 1)]
    m = molien(setup.Hbar, character=setup.chi_bar if character == "chi" else None)
    assert m.expand(D) == dims


@pytest.mark.molien
def test_reconstruction_from_dims(setup):
    dims = [setup.G_action.fixed_space((x, 0)).dim for x in range(D + 1)]
    assert reconstruct_from_dims(dims, [2, 3, 4]) == IntPolynomial([1, 0, 0, 0, 0, 0, 1])
    hdims = [setup.Hbar_chi_action.fixed_space((x, 0)).dim for x in range(D + 1)]
    assert reconstruct_from_dims(hdims, [2, 3, 4]) == IntPolynomial([0, 1, 1, 2, 1, 1])
