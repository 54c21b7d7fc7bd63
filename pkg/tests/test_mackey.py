from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given

from orthorook.characters import Cyclotomic, theta
from orthorook.ffalg import MatrixModel
from orthorook.mackey import (
    MackeyCharacter,
    RankTooSmall,
    centralizer_brute,
    length_step,
    little_group_formula,
    mackey_verify,
    psi_character,
    psi_exponent,
    reduced_placement,
    sigma2,
    split_u1_v,
)
from orthorook.placement import battleship, placement_from_tokens
from orthorook.roots import Family, Short, s_minus
from orthorook.weyl import involution_stats

from conftest import placement_in, placements, system

B2 = MatrixModel(system("B", 2), 5)
D3 = MatrixModel(system("D", 3), 7)


def random_element(model, rng):
    return model.element([rng.randrange(model.p) for _ in model.system])


def first_columns(S):
    """Every possible beta_1 situation: empty, each column-1 root, and a col > 1 root."""
    yield placement_from_tokens(S, "")
    for r in S.column(1):
        yield placement_from_tokens(S, [r.token])
    yield placement_from_tokens(S, ["e2-e3"] if S.n >= 3 else ["e2"] if S.family is Family.B else [])


# ---- the split ---------------------------------------------------------------


def test_factor_identity():
    a, b = split_u1_v(B2).factor(B2.identity())
    assert np.array_equal(a, B2.identity()) and np.array_equal(b, B2.identity())


@pytest.mark.parametrize("model", [B2, D3], ids=["B2", "D3"])
def test_factor_random(model):
    sp = split_u1_v(model)
    rng = random.Random(1)
    for _ in range(1000 if model is B2 else 200):
        g = random_element(model, rng)
        a, b = sp.factor(g)
        assert a in sp.u1_group and b in sp.v_group
        assert np.array_equal(model.mul(a, b), g)


def test_unique_factorization_b2():
    sp = split_u1_v(B2)
    products = {B2.key(B2.mul(a, b)) for a in sp.u1_group for b in sp.v_group}
    assert len(products) == len(B2.group) == len(sp.u1_group) * len(sp.v_group)


def test_projection_to_v_is_homomorphism():
    sp = split_u1_v(D3)
    rng = random.Random(2)
    for _ in range(200):
        g, h = random_element(D3, rng), random_element(D3, rng)
        assert np.array_equal(sp.project_v(D3.mul(g, h)), D3.mul(sp.project_v(g), sp.project_v(h)))


@pytest.mark.parametrize("model", [B2, D3], ids=["B2", "D3"])
def test_u1_abelian(model):
    sp = split_u1_v(model)
    for a, b in itertools.combinations(sp.u1_roots, 2):
        assert not model.bracket(model.root_matrix(a), model.root_matrix(b)).any()


# ---- psi --------------------------------------------------------------------------


def test_psi_trivial_off_first_column():
    D = placement_from_tokens(D3.system, "e2-e3")
    psi = psi_character(D3, D, {D.beta1: 4})
    assert all(psi(a) == 1 for a in psi.group)


def test_psi_on_root_subgroup():
    D = placement_from_tokens(B2.system, "e1")
    psi = psi_character(B2, D, {Short(1): 1})
    assert psi(B2.identity()) == 1
    for t in range(5):
        assert psi(B2.x_alpha(Short(1), t)) == Cyclotomic.zeta(5, t)


@pytest.mark.parametrize("model", [B2, D3], ids=["B2", "D3"])
def test_psi_is_theta_of_form(model):
    sp = split_u1_v(model)
    for D in placements(model.system.family.value, model.system.n):
        xi = {b: 3 for b in D}
        coeffs = {model.system.index[b]: 3 for b in D}
        for a in sp.u1_group:
            x = model.log_coords(a)
            f_ln = sum(v * int(x[k]) for k, v in coeffs.items()) % model.p
            assert theta(psi_exponent(model, D, xi, a), model.p) == theta(f_ln, model.p)


# ---- little group data ----------------------------------------------------------------


def test_b6_short_reduces_to_d5():
    S = system("B", 6)
    data = little_group_formula(S, placement_from_tokens(S, "e1"))
    assert data.reduced.name == "D5"


def test_d6_col_two():
    S = system("D", 6)
    data = little_group_formula(S, placement_from_tokens(S, "e2+e4"))
    assert data.reduced.name == "D5"
    assert data.phi2_roots == frozenset(S) - frozenset(S.column(1))


def test_b2_e1_leaves_nothing():
    S = B2.system
    data = little_group_formula(S, placement_from_tokens(S, "e1"))
    assert data.phi1_roots == frozenset() and len(data.reduced) == 0


@pytest.mark.parametrize(
    "fam,n,token,name",
    [("B", 5, "e1-e3", "B3"), ("B", 5, "e1+e4", "B3"), ("D", 5, "e1-e2", "D3"), ("B", 5, "e1", "D4"), ("B", 5, "e3", "B4")],
)
def test_reduced_system_table(fam, n, token, name):
    S = system(fam, n)
    assert little_group_formula(S, placement_from_tokens(S, token)).reduced.name == name


def test_rank_too_small_when_strict():
    S = system("B", 3)
    D = placement_from_tokens(S, "e1-e2")
    with pytest.raises(RankTooSmall):
        little_group_formula(S, D, strict=True)
    assert little_group_formula(S, D).reduced.name == "B1"


@pytest.mark.parametrize("fam,n", [(f, n) for f in "BD" for n in range(2, 7)])
def test_root_set_structure(fam, n):
    S = system(fam, n)
    c1 = frozenset(S.column(1))
    for D in first_columns(S):
        data = little_group_formula(S, D)
        assert data.phi2_roots <= data.phi1_roots <= frozenset(S) - c1
        # phi_2 is exactly the roots avoiding every removed row and column
        keep = {r for r in S if r.col not in data.removed and r.row not in data.removed}
        assert data.phi2_roots == keep
        # the relabelling is an isometry onto the reduced positive roots
        n2 = data.reduced.n
        for a, b in itertools.product(data.phi2_roots, repeat=2):
            pa, pb = data.pi[a], data.pi[b]
            assert a.dot(b) == pa.dot(pb)
        assert sorted(data.pi.values(), key=data.reduced.index.__getitem__) == list(data.reduced)
        assert all(r.norm2() == data.pi[r].norm2() for r in data.phi2_roots)
        assert n2 in (n - 1, n - 2)


@pytest.mark.parametrize("fam,n", [(f, n) for f in "BD" for n in range(2, 6)])
def test_v1_is_abelian(fam, n):
    S = system(fam, n)
    for D in first_columns(S):
        v1 = little_group_formula(S, D).v1_roots
        for a, b in itertools.combinations(v1, 2):
            assert S.add(a, b) is None


@given(placement_in(max_rank=5))
def test_battleship_restricts_along_pi(D):
    S = D.system
    data = little_group_formula(S, D)
    small = data.reduce_placement(D)
    F, Fs = battleship(D), battleship(small)
    for r in data.phi2_roots:
        assert F[r] is Fs[data.pi[r]]


@given(placement_in(max_rank=5))
def test_sigma2_support(D):
    data = little_group_formula(D.system, D)
    s2 = sigma2(D.system, D, data)
    assert (s2 * s2).is_identity()
    assert len(reduced_placement(D)) == len([b for b in D if b in data.phi2_roots])


# ---- centralizer -------------------------------------------------------------------------


@pytest.mark.parametrize("model", [B2, D3], ids=["B2", "D3"])
def test_centralizer_matches_formula(model):
    sp = split_u1_v(model)
    S = model.system
    for D in placements(S.family.value, S.n):
        xi = {b: 2 for b in D}
        cen = centralizer_brute(sp, D, xi)
        Vp = model.span_group(little_group_formula(S, D).phi1_roots)
        assert len(cen) == len(Vp) and all(b in Vp for b in cen)


def test_centralizer_b2_e1_trivial():
    D = placement_from_tokens(B2.system, "e1")
    cen = centralizer_brute(split_u1_v(B2), D, {Short(1): 1})
    assert len(cen) == 1 and np.array_equal(cen[0], B2.identity())


# ---- the decomposition -----------------------------------------------------------------------


@pytest.mark.parametrize("model", [B2, D3], ids=["B2", "D3"])
def test_degree_bookkeeping(model):
    S = model.system
    for D in placements(S.family.value, S.n):
        chi = MackeyCharacter(S, model.p, D, {b: 1 for b in D})
        b1 = D.beta1
        k = len(s_minus(S, b1)) if b1 is not None and b1.col == 1 else 0
        assert chi.index == model.p**k
        child_deg = chi.child(chi.child.model.identity()) if chi.child else 1
        assert chi(model.identity()) == child_deg * chi.index


def test_empty_placement_is_trivial():
    rep = mackey_verify(B2.system, 5, placements("B", 2)[0], {}, mode="full")
    assert rep.ok and rep.checked == 625 and rep.reduced_chain == [{"family": "B", "rank": 2, "beta1": None}]


def test_b2_full_every_xi():
    for D in placements("B", 2):
        for xi in itertools.product(range(1, 5), repeat=len(D)):
            rep = mackey_verify(B2.system, 5, D, dict(zip(D.roots, xi)), mode="full")
            assert rep.ok and rep.checked == 625


def test_d3_sampled():
    for D in placements("D", 3):
        rep = mackey_verify(D3.system, 7, D, {b: 3 for b in D}, mode="sampled", samples=120, seed=5)
        assert rep.ok and rep.checked == 120 and rep.seed == 5


def test_b3_two_root_sampled():
    S = system("B", 3)
    D = placement_from_tokens(S, "e1, e2-e3")
    rep = mackey_verify(S, 7, D, {b: 2 for b in D}, mode="sampled", samples=60, seed=0)
    assert rep.ok
    assert [step["family"] + str(step["rank"]) for step in rep.reduced_chain] == ["B3", "D2"]


def test_unknown_mode():
    with pytest.raises(ValueError):
        mackey_verify(B2.system, 5, placements("B", 2)[0], {}, mode="partial")


# ---- length recursion ---------------------------------------------------------------------------


@pytest.mark.parametrize("fam,n", [(f, n) for f in "BD" for n in range(2, 6)])
def test_length_recursion(fam, n):
    for D in placements(fam, n):
        step = length_step(D)
        assert step.ok, (D.tokens, step)


def test_short_case_rules_out_doubled_d():
    # with d > 0 the alternative 2(n + 2d) - 1 overshoots
    S = system("B", 4)
    D = placement_from_tokens(S, "e1, e2+e3")
    st_ = involution_stats(S, D.roots)
    step = length_step(D)
    assert st_.d_stat == 1 and step.ok
    assert step.delta != 2 * (S.n + 2 * st_.d_stat) - 1


def test_length_example_b6():
    D = placement_from_tokens(system("B", 6), "e1, e2+e6, e3+e5")
    step = length_step(D)
    assert (step.case, step.length, step.reduced_length) == ("short", 25, 10)
