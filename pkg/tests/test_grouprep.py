import pytest
from hypothesis import given, strategies as st

from conftest import elements
from diffinv.grouprep import (LinearCharacter, NotASubgroupError, act, act_dual, as_matrix, closure, dual_module,
                              identity, induced_module, mat_inv, mat_mul, subgroup_check, transversal,
                              verify_module_iso)

P = 3


def test_orders(setup):
    assert setup.G.order == 24
    assert setup.H.order == 8
    assert setup.Gbar.order == 12
    assert setup.Hbar.order == 4
    assert setup.G.is_closed()
    subgroup_check(setup.G, setup.H)


def test_kernel_is_plus_minus_identity(setup):
    assert set(setup.rho.kernel()) == {identity(2), as_matrix(((-1, 0), (0, -1)), P)}


def test_displayed_images(setup):
    rho = setup.rho
    assert rho.image(setup.t) == ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    assert rho.image(setup.i) == as_matrix(((1, 0, 0), (0, -1, 0), (0, 0, -1)), P)
    assert rho.image(setup.j) == as_matrix(((-1, 0, 0), (0, -1, 0), (0, 0, 1)), P)
    assert rho.image(setup.k) == as_matrix(((-1, 0, 0), (0, 1, 0), (0, 0, -1)), P)


def test_row_convention_reverses_products(setup):
    rho = setup.rho
    assert rho.is_multiplicative()
    g, h = setup.t, setup.i
    assert rho.image(mat_mul(g, h, P)) == mat_mul(rho.image(h), rho.image(g), P)


def test_subgroup_check_rejects_non_subgroup(setup):
    other = closure([((1, 0), (1, 1))], P)
    with pytest.raises(NotASubgroupError):
        subgroup_check(setup.H, other)


def test_mat_inv():
    a = as_matrix(((1, 1), (0, 1)), P)
    assert mat_mul(a, mat_inv(a, P), P) == identity(2)


def test_transversal(setup):
    tr = setup.transversal
    assert tr.is_transversal()
    assert tr.representatives == (identity(2), setup.t, mat_mul(setup.t, setup.t, P))


def test_character_values(setup):
    chi = setup.chi
    assert chi.is_multiplicative()
    assert (chi(setup.i), chi(setup.j), chi(setup.k)) == (1, 2, 2)
    assert setup.chi_bar.is_multiplicative()


def test_inconsistent_character_rejected(setup):
    with pytest.raises(ValueError):
        LinearCharacter.from_generators(setup.G, [(setup.t, 2), (setup.i, 1)])


def test_module_isomorphism(setup):
    phi = identity(3)
    src = dual_module(setup.rho)
    assert verify_module_iso(phi, src, induced_module(setup.transversal, setup.chi), setup.G.generators, P)


def test_module_isomorphism_negative_control(setup):
    swapped = LinearCharacter.from_generators(setup.H, [(setup.i, -1), (setup.j, 1)])
    res = verify_module_iso(identity(3), dual_module(setup.rho), induced_module(setup.transversal, swapped),
                            setup.G.generators, P)
    assert not res
    assert res.witness == setup.i


def test_module_isomorphism_trivial_subgroup_case(setup):
    # H = G: the induced module is one-dimensional and the identity map works for the trivial character
    tr = transversal(setup.G, setup.G)
    triv = LinearCharacter.trivial(setup.G)
    assert verify_module_iso(identity(1), lambda g: identity(1), induced_module(tr, triv), setup.G.generators, P)


def test_actions_on_variables(setup):
    x = {c: setup.element(f"x{c}") for c in (1, 2, 3)}
    assert [str(act(setup.t, x[c], setup.rho)) for c in (1, 2, 3)] == ["x2", "x3", "x1"]
    assert [str(act(setup.i, x[c], setup.rho)) for c in (1, 2, 3)] == ["x1", "2*x2", "2*x3"]


group_elems = st.integers(0, 23)


@pytest.mark.action
@given(group_elems, group_elems, elements())
def test_action_is_homomorphism(setup, a, b, f):
    G, rho = setup.G, setup.rho
    g, h = G.elements[a], G.elements[b]
    assert act(G.mul(g, h), f, rho) == act(g, act(h, f, rho), rho)


@pytest.mark.action
@given(group_elems, elements(), elements())
def test_action_is_algebra_map(setup, a, f1, f2):
    g = setup.G.elements[a]
    rho = setup.rho
    assert act(g, f1 * f2, rho) == act(g, f1, rho) * act(g, f2, rho)
    assert act(g, f1 + f2, rho) == act(g, f1, rho) + act(g, f2, rho)


@pytest.mark.action
@given(elements())
def test_kernel_acts_trivially(setup, f):
    for g in setup.rho.kernel():
        assert act(g, f, setup.rho) == f
    assert act_dual(identity(3), f) == f
