import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import homogeneous
from diffinv import linalg
from diffinv.gcalg import GCElement, bidegree_basis, to_vector
from diffinv.grouprep import act
from diffinv.invariants import ModularGroupError, dimension_table, reynolds

P = 3


def brute_force_dim(action, bd):
    """Count fixed vectors by enumerating all of F_3^N; no row reduction involved."""
    basis = bidegree_basis(bd, 3)
    N = len(basis)
    vectors = np.array(list(itertools.product(range(P), repeat=N)), dtype=np.int64)
    ok = np.ones(len(vectors), dtype=bool)
    for g in action.group.generators:
        cols = [to_vector(act(g, GCElement.monomial(m), action.rep), bd) for m in basis]
        M = np.array(cols).T - action.chi(g) * np.eye(N, dtype=np.int64)
        ok &= ~((vectors @ M.T) % P).any(axis=1)
    count = int(ok.sum())
    dim = round(np.log(count) / np.log(P))
    assert P ** dim == count
    return dim


@pytest.mark.parametrize("bd", [(1, 0), (2, 0), (3, 0), (1, 1), (0, 2), (0, 3)])
def test_fixed_dims_against_enumeration(setup, bd):
    for action in (setup.G_action, setup.Hbar_chi_action, setup.H_chi_action):
        assert action.fixed_space(bd).dim == brute_force_dim(action, bd)


def test_named_elements_are_invariant(setup):
    for name, f in setup.named.items():
        assert setup.G_action.is_relative_invariant(f), name


def test_generators_suffice(setup):
    for bd in [(4, 0), (3, 1), (2, 2)]:
        a = setup.G_action.fixed_space(bd)
        b = setup.G_action.fixed_space(bd, all_elements=True)
        assert a.dim == b.dim and list(a.pivots) == list(b.pivots)


def test_fixed_basis_is_echelon(setup):
    fs = setup.G_action.fixed_space((6, 0))
    R, piv = linalg.rref(fs.echelon, P)
    assert np.array_equal(R, fs.echelon)
    assert all(fs.contains(f) for f in fs.basis)
    assert not fs.contains(setup.element("x1^6"))


def test_relative_invariant_degree_two(setup):
    fs = setup.H_chi_action.fixed_space((2, 0))
    assert [str(f) for f in fs.basis] == ["x2*x3"]
    assert [str(f) for f in setup.G_action.fixed_space((2, 0)).basis] == ["x1^2+x2^2+x3^2"]
    assert setup.G_action.fixed_space((1, 0)).dim == 0


def test_dimension_table_shape(setup):
    table = dimension_table(setup.G, setup.rho, None, 6)
    assert sorted(table) == [0, 1, 2, 3]
    assert table[0] == [1, 0, 1, 1, 2, 1, 4]
    assert table[3] == table[0]
    assert table[1] == table[2] == [0, 1, 1, 3, 3, 6, 6]


def test_reynolds_refuses_modular_group(setup):
    with pytest.raises(ModularGroupError):
        reynolds(setup.element("x1^2"), setup.G, setup.rho)


@pytest.mark.reynolds
@given(st.data(), st.integers(0, 4), st.integers(0, 3))
def test_reynolds_idempotent(setup, data, xd, yd):
    f = data.draw(homogeneous((xd, yd)))
    for character in (None, setup.chi):
        r = reynolds(f, setup.H, setup.rho_H, character)
        assert reynolds(r, setup.H, setup.rho_H, character) == r
        action = setup.H_chi_action if character else setup.action("H")
        assert action.is_relative_invariant(r)


@pytest.mark.reynolds
@given(st.data(), st.integers(0, 4))
def test_reynolds_fixes_invariants(setup, data, xd):
    fs = setup.H_chi_action.fixed_space((xd, 1))
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=fs.dim, max_size=fs.dim))
    f = sum((g.scale(c) for g, c in zip(fs.basis, coeffs)), setup.element("0*x1"))
    assert reynolds(f, setup.H, setup.rho_H, setup.chi) == f
