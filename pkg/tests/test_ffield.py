import itertools

import pytest
from hypothesis import given, strategies as st

from diffinv.ffield import (BrauerLift, CyclotomicScalar, ExtField, FieldMismatchError, ModularElementError,
                            PrimeFieldScalar, brauer_det, charpoly, cyclotomic_polynomial, eigenvalues_bar,
                            field_op, first_irreducible, is_irreducible, matrix_order, poly_divmod, poly_mul)

residues = st.integers(0, 2)


@given(residues, residues, residues)
def test_prime_field_axioms(a, b, c):
    A, B, C = (PrimeFieldScalar(v, 3) for v in (a, b, c))
    assert (A + B) * C == A * C + B * C
    assert A * B == B * A
    assert A - A == 0
    if b:
        assert (A / B) * B == A


def test_prime_field_errors():
    with pytest.raises(ZeroDivisionError):
        PrimeFieldScalar(0, 3).inv()
    with pytest.raises(FieldMismatchError):
        PrimeFieldScalar(1, 3) + PrimeFieldScalar(1, 5)
    with pytest.raises(AttributeError):
        PrimeFieldScalar(1, 3).residue = 2


def test_field_op_dispatch():
    a, b = PrimeFieldScalar(2, 3), PrimeFieldScalar(2, 3)
    assert field_op("mul", a, b) == 1
    assert field_op("inv", a) == 2
    assert field_op("pow", a, 2) == 1
    with pytest.raises(ValueError):
        field_op("frobnicate", a, b)


def test_first_irreducible_is_smallest():
    f = first_irreducible(3, 2)
    assert is_irreducible(f, 3)
    # every smaller monic quadratic is reducible
    for c0, c1 in itertools.product(range(3), repeat=2):
        g = (c0, c1, 1)
        if c0 + 3 * c1 < f[0] + 3 * f[1]:
            assert not is_irreducible(g, 3)


def test_poly_divmod_roundtrip():
    a, b = [1, 2, 0, 1, 2], [2, 1, 1]
    q, r = poly_divmod(a, b, 3)
    assert [(x + y) % 3 for x, y in itertools.zip_longest(poly_mul(q, b, 3), r, fillvalue=0)] == a


def test_ext_field_generator_has_full_order():
    F = ExtField(3, 2)
    assert len(list(F.elements())) == 9
    assert F.generator().multiplicative_order() == 8
    nonzero = [x for x in F.elements() if not x.is_zero()]
    assert all(x * x.inv() == F.element(1) for x in nonzero)


def test_charpoly_of_rotation():
    # x^3 - 1 = (x - 1)^3 in characteristic 3
    assert charpoly(((0, 1, 0), (0, 0, 1), (1, 0, 0)), 3) == [2, 0, 0, 1]


def test_eigenvalues_of_order_eight_matrix():
    m = ((0, 1), (1, 1))
    assert matrix_order(m, 3) == 8
    eig = eigenvalues_bar(m, 3)
    assert len(eig) == 2
    assert sorted(e.multiplicative_order() for e in eig) == [8, 8]


def test_cyclotomic_arithmetic():
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    z = CyclotomicScalar.zeta_power(1, 8)
    assert z ** 8 == 1
    assert (z ** 4).is_rational() and (z ** 4).to_int() == -1
    assert not z.is_rational()


def test_brauer_lift_is_multiplicative():
    lift = BrauerLift.for_exponent(3, 8)
    F = lift.field
    nonzero = [x for x in F.elements() if not x.is_zero()]
    for a in nonzero:
        for b in nonzero:
            assert lift(a * b) == lift(a) * lift(b)


def test_brauer_det_rejects_p_elements():
    lift = BrauerLift.for_exponent(3, 2)
    with pytest.raises(ModularElementError):
        brauer_det(((1, 1), (0, 1)), lift)


def test_brauer_det_of_reflection():
    lift = BrauerLift.for_exponent(3, 2)
    # det(1 - t*diag(1, -1)) = 1 - t^2
    coeffs = brauer_det(((1, 0), (0, 2)), lift)
    assert [c.to_int() for c in coeffs] == [1, 0, -1]
