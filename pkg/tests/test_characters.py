from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthorook.characters import (
    ClassFunction,
    Cyclotomic,
    DomainMismatch,
    NotMultiplicative,
    NotSubgroup,
    character_report,
    check_multiplicative,
    chi_from_orbit,
    induce,
    inner_product,
    left_transversal,
    phi_f,
    theta,
)
from orthorook.coadjoint import canonical_form, orbit_enumerate
from orthorook.ffalg import MatrixModel
from orthorook.placement import polarization_roots
from orthorook.roots import Short, Sum

from conftest import placements, system

B2 = MatrixModel(system("B", 2), 5)

cyclo = st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6)), min_size=4, max_size=4).map(
    lambda c: Cyclotomic(5, c)
)


def character(D, xi):
    f = canonical_form(B2.system, 5, D, xi)
    return chi_from_orbit(B2, orbit_enumerate(B2, f)), f


# ---- cyclotomic arithmetic ------------------------------------------------------


def test_zeta_powers():
    z = Cyclotomic.zeta(5)
    acc = Cyclotomic.one(5)
    for _ in range(5):
        acc = acc * z
    assert acc == 1
    assert sum((Cyclotomic.zeta(5, k) for k in range(5)), Cyclotomic.zero(5)) == 0


def test_theta():
    assert theta(0, 7) == 1
    assert theta(9, 7) == Cyclotomic.zeta(7, 2)
    assert abs(theta(1, 5).to_complex() - np.exp(2j * np.pi / 5)) < 1e-12


def test_reduction_is_idempotent():
    x = Cyclotomic(5, [1, 2, 3, 4, 5])
    assert Cyclotomic(5, x.coeffs) == x
    assert x == Cyclotomic(5, [-4, -3, -2, -1])


@given(cyclo, cyclo)
def test_conj_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()


@given(cyclo, cyclo, cyclo)
def test_ring_laws(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0


@given(cyclo)
def test_complex_embedding(x):
    assert abs(x.conj().to_complex() - x.to_complex().conjugate()) < 1e-9


def test_rational_display():
    assert Cyclotomic.rational(5, Fraction(3, 2)).is_rational()
    assert not Cyclotomic.zeta(5).is_rational()


# ---- class functions -------------------------------------------------------------


def test_degree_and_norm_per_placement():
    for D in placements("B", 2):
        chi, f = character(D, {b: 2 for b in D})
        orb = orbit_enumerate(B2, f)
        assert chi.degree() == 5 ** (orb.dimension // 2)
        assert inner_product(chi, chi) == 1


def test_orbit_method_all_placements_all_xi():
    seen = []
    for D in placements("B", 2):
        for xi in itertools.product(range(1, 5), repeat=len(D)):
            xi = dict(zip(D.roots, xi))
            chi, f = character(D, xi)
            P = B2.span_group(polarization_roots(D))
            ind = induce(P, phi_f(B2, P, f), B2.group)
            assert all(chi(g) == ind(g) for g in B2.group)
            seen.append((orbit_enumerate(B2, f).as_set(), chi))
    for (o1, c1), (o2, c2) in itertools.combinations(seen, 2):
        if o1 != o2:
            assert inner_product(c1, c2) == 0


def test_phi_f_multiplicative_on_polarization():
    D = placements("B", 2)[2]
    chi, f = character(D, {Short(1): 3})
    P = B2.span_group(polarization_roots(D))
    check_multiplicative(phi_f(B2, P, f), pairs=300)


def test_phi_f_not_multiplicative_off_polarization():
    D = placements("B", 2)[2]
    _, f = character(D, {Short(1): 1})
    with pytest.raises(NotMultiplicative):
        check_multiplicative(phi_f(B2, B2.group, f), pairs=500)


def test_transversal():
    H = B2.span_group([Short(1), Sum(1, 2)])
    reps = left_transversal(H, B2.group)
    assert len(reps) == 25
    cosets = {B2.key(B2.mul(r, h)) for r in reps for h in H}
    assert len(cosets) == 625


def test_non_subgroup_rejected():
    # e1-e2 and e2 generate e1 as well; their span alone is not closed
    not_closed = B2.span_group([placements("B", 2)[1].roots[0], Short(2)])
    with pytest.raises(NotSubgroup):
        left_transversal(not_closed, B2.group)


def test_domain_mismatch():
    H = B2.span_group([Short(1)])
    a = ClassFunction(H, lambda g: Cyclotomic.one(5))
    b = ClassFunction(B2.group, lambda g: Cyclotomic.one(5))
    with pytest.raises(DomainMismatch):
        inner_product(a, b)


def test_trivial_induced_is_permutation_character():
    H = B2.span_group([Short(1), Sum(1, 2)])
    one = ClassFunction(H, lambda g: Cyclotomic.one(5))
    ind = induce(H, one, B2.group)
    assert ind.degree() == 25
    # the norm counts double cosets; for a normal subgroup that is the index
    assert inner_product(ind, ind) == 25


def test_character_report_full():
    D = placements("B", 2)[3]
    rep = character_report(B2, D, {Sum(1, 2): 4})
    assert rep["matches_induced"] and rep["degree"] == "5" and rep["inner_product"] == "1"
    assert not rep["sampled"] and rep["sample_size"] == 625


def test_character_report_sampled():
    M = MatrixModel(system("D", 3), 7)
    D = placements("D", 3)[4]
    rep = character_report(M, D, {b: 1 for b in D}, sample=30, seed=3)
    assert rep["matches_induced"] and rep["degree"] == "49" and rep["sampled"]
    assert rep["inner_product"] is None and rep["seed"] == 3
