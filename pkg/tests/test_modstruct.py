import pytest

from diffinv.fixtures import MINIMAL_GENERATORS, MINIMAL_PROFILE, RELATIONS, RELATIVE_GENERATORS
from diffinv.modstruct import (a_span_dims, find_module_generators, freeness_triangle, generation_check, hsop_check,
                               in_subalgebra, minimal_algebra_generators, named_generators_check, relation_extract,
                               relation_from_terms, theta, theta_iso_check)

D = 12


@pytest.fixture(scope="module")
def mg(setup):
    return minimal_algebra_generators(setup.G_action, 20)


def test_hsop_check(setup):
    a = [setup.named[k] for k in ("a1", "a2", "a3")]
    assert hsop_check(a, 3)
    assert hsop_check([setup.element(f"x{c}^2") for c in (1, 2, 3)], 3)
    assert not hsop_check([a[0], a[1], a[0] * a[1]], 3)


def test_hsop_monomials(setup):
    A = setup.hsop
    assert tuple(A.degrees) == (2, 3, 4)
    assert sorted(A.monomials(4)) == [(0, 0, 1), (2, 0, 0)]
    assert A.monomials(1) == []
    assert A.element((1, 1, 0)) == setup.named["a1"] * setup.named["a2"]


def test_a_span_dims(setup):
    gens = [setup.element(t) for t in RELATIVE_GENERATORS]
    assert a_span_dims(gens, setup.hsop, range(1, 6), 0) == [1, 1, 3, 3, 6]


def test_generation_of_relative_invariants(setup):
    gens = [setup.element(t) for t in RELATIVE_GENERATORS]
    res = generation_check(gens, setup.hsop, setup.Hbar_chi_action, 0, D)
    assert res.ok and res.free
    assert res.span_dims == res.fixed_dims == res.free_dims


@pytest.mark.parametrize("k", range(6))
def test_dropping_a_generator_fails(setup, k):
    gens = [setup.element(t) for t in RELATIVE_GENERATORS]
    res = generation_check(gens[:k] + gens[k + 1:], setup.hsop, setup.Hbar_chi_action, 0, D)
    assert not res.ok
    bd, witness = res.witness
    assert bd[0] == gens[k].xdeg
    assert setup.Hbar_chi_action.fixed_space(bd).contains(witness)


def test_find_generators_of_S_G(setup):
    rep = find_module_generators(setup.hsop, setup.G_action, 0, D)
    assert rep.degrees == [0, 6]
    assert rep.free and rep.complete and rep.counts_match_numerator()


def test_find_relative_generators(setup):
    rep = find_module_generators(setup.hsop, setup.Hbar_chi_action, 0, D)
    assert rep.degrees == [1, 2, 3, 3, 4, 5]


@pytest.mark.parametrize("ydeg", [0, 3])
def test_extreme_summands_free(setup, ydeg):
    top = setup.named["y123"] if ydeg == 3 else setup.element("1")
    gens = [top, setup.named["b"] * top]
    tri = freeness_triangle(gens, setup.hsop, setup.G_action, ydeg, D)
    assert tri["ok"]


@pytest.mark.parametrize("i,letter", [(1, "c"), (2, "d")])
def test_theta_images(setup, i, letter):
    for k, text in enumerate(RELATIVE_GENERATORS, start=1):
        img = theta(setup.element(text), i, setup.transversal, setup.rho, setup.H_chi_action)
        assert img == setup.named[f"{letter}{k}"]


def test_theta_rejects_non_invariant(setup):
    with pytest.raises(ValueError):
        theta(setup.element("x2"), 1, setup.transversal, setup.rho, setup.H_chi_action)


def test_theta_isomorphism(setup):
    assert theta_iso_check(setup.transversal, setup.rho, setup.H_chi_action, setup.G_action, D)


@pytest.mark.parametrize("pair", list(RELATIONS))
def test_relations_match(setup, pair):
    N = setup.named
    dgens = {f"d{k}": N[f"d{k}"] for k in range(1, 7)}
    u, v = pair
    rec = relation_extract(N[u] * N[v], dgens, setup.hsop, f"{u}*{v}")
    assert rec is not None and rec.unique and rec.residual_zero
    assert rec.matches(RELATIONS[pair], setup.p)
    assert relation_from_terms(RELATIONS[pair], dgens, setup.hsop) == N[u] * N[v]


def test_relation_outside_span(setup):
    N = setup.named
    dgens = {f"d{k}": N[f"d{k}"] for k in range(1, 4)}
    assert relation_extract(N["c1"] * N["c2"], dgens, setup.hsop, "c1*c2") is None


def test_minimal_profile(setup, mg):
    assert mg.profile == MINIMAL_PROFILE
    assert mg.total == 14


def test_named_generators_span_complements(setup, mg):
    named = {k: setup.named[k] for k in MINIMAL_GENERATORS}
    assert named_generators_check(named, mg, setup.G_action)["ok"]


def test_obsolete_generators(setup, mg):
    gens = [setup.named[k] for k in MINIMAL_GENERATORS]
    for k in ("d4", "d5", "d6"):
        assert in_subalgebra(setup.named[k], gens, mg, setup.G_action)
    # c3 is genuinely new
    assert not in_subalgebra(setup.named["c3"], [g for g in gens if g != setup.named["c3"]], mg, setup.G_action)
