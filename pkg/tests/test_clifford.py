from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ksa2d.clifford import (
    IDENTITY,
    LORENTZIAN,
    OMEGA,
    RIEMANNIAN,
    SIGMA1,
    SIGMA3,
    CliffordElement,
    Mat2,
    build_gamma_rep,
    clifford_product,
    element_from_matrix,
    element_to_matrix,
    signature_from_name,
    verify_gamma_identities,
)

REPS = [build_gamma_rep(LORENTZIAN), build_gamma_rep(RIEMANNIAN)]

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def test_lorentzian_rep_matrices():
    rep = build_gamma_rep(LORENTZIAN)
    assert rep.gamma[0] == Mat2([[0, 1], [-1, 0]])
    assert rep.gamma[1] == Mat2([[0, 1], [1, 0]])
    assert rep.gamma_star == SIGMA3
    assert rep.varsigma == -1
    assert rep.eta == (Fraction(-1), Fraction(1))
    assert rep.eps_lower(0, 1) == 1
    assert rep.eps_upper(0, 1) == -1


def test_riemannian_rep_matrices():
    rep = build_gamma_rep(RIEMANNIAN)
    assert rep.gamma[0] == SIGMA3
    assert rep.gamma[1] == SIGMA1
    assert rep.gamma_star == OMEGA
    assert rep.varsigma == 1
    assert rep.eps_lower(0, 1) == 1
    assert rep.eps_upper(0, 1) == 1
    # pair element convention Gamma_{mu nu} = eps_{mu nu} Gamma_*
    assert rep.gamma_pair(0, 1) == OMEGA
    assert rep.gamma_pair(1, 0) == -OMEGA


@pytest.mark.parametrize("rep", REPS, ids=["lorentzian", "riemannian"])
def test_clifford_relation(rep):
    for mu in range(2):
        for nu in range(2):
            anti = rep.gamma[mu] @ rep.gamma[nu] + rep.gamma[nu] @ rep.gamma[mu]
            expected = IDENTITY * (2 * rep.eta[mu]) if mu == nu else Mat2.zero()
            assert anti == expected


@pytest.mark.parametrize("rep", REPS, ids=["lorentzian", "riemannian"])
def test_identity_suite_passes(rep):
    report = verify_gamma_identities(rep)
    assert report.all_passed, report.failed()


def test_riemannian_eps_full_contraction_value():
    rep = build_gamma_rep(RIEMANNIAN)
    total = sum(rep.eps_lower(m, n) * rep.eps_upper(m, n) for m in range(2) for n in range(2))
    assert total == 2


def test_volume_squares_to_minus_varsigma():
    for rep in REPS:
        assert rep.gamma_star @ rep.gamma_star == IDENTITY * (-rep.varsigma)


def test_index_raising_involutive():
    for rep in REPS:
        for mu in range(2):
            # lower then raise the gamma index
            lowered = rep.gamma_upper(mu) * rep.eta[mu]
            assert lowered == rep.gamma[mu]
            for nu in range(2):
                raised_twice = rep.eps_upper(mu, nu)
                direct = rep.eps_lower(mu, nu) / (rep.eta[mu] * rep.eta[nu])
                assert raised_twice == direct


def test_product_gamma0_gamma1_lorentzian():
    # oracle: raw 2x2 matrix product
    rep = build_gamma_rep(LORENTZIAN)
    x = CliffordElement.vector(0)
    y = CliffordElement.vector(1)
    product = clifford_product(rep, x, y)
    oracle = rep.gamma[0] @ rep.gamma[1]
    assert element_to_matrix(rep, product) == oracle
    # reduction: eps_01 Gamma_* + eta_01 = Gamma_*
    assert product == CliffordElement.volume()


@pytest.mark.parametrize("rep", REPS, ids=["lorentzian", "riemannian"])
def test_volume_times_volume(rep):
    sq = clifford_product(rep, CliffordElement.volume(), CliffordElement.volume())
    assert sq == CliffordElement.make(-rep.varsigma, (0, 0), 0)


@pytest.mark.parametrize("rep", REPS, ids=["lorentzian", "riemannian"])
def test_identity_is_neutral(rep):
    y = CliffordElement.make(Fraction(2, 3), (Fraction(-1, 2), 4), Fraction(5, 7))
    assert clifford_product(rep, CliffordElement.one(), y) == y
    assert clifford_product(rep, y, CliffordElement.one()) == y


@given(coeffs=st.tuples(rationals, rationals, rationals, rationals))
def test_element_matrix_round_trip(coeffs):
    c1, cm0, cm1, cs = coeffs
    for rep in REPS:
        el = CliffordElement.make(c1, (cm0, cm1), cs)
        back = element_from_matrix(rep, element_to_matrix(rep, el))
        assert back == el


@given(
    x=st.tuples(rationals, rationals, rationals, rationals),
    y=st.tuples(rationals, rationals, rationals, rationals),
    z=st.tuples(rationals, rationals, rationals, rationals),
)
def test_product_associative_and_bilinear(x, y, z):
    rep = build_gamma_rep(LORENTZIAN)
    ex = CliffordElement.make(x[0], (x[1], x[2]), x[3])
    ey = CliffordElement.make(y[0], (y[1], y[2]), y[3])
    ez = CliffordElement.make(z[0], (z[1], z[2]), z[3])
    left = clifford_product(rep, clifford_product(rep, ex, ey), ez)
    right = clifford_product(rep, ex, clifford_product(rep, ey, ez))
    assert left == right
    # bilinearity in the first slot against matrix arithmetic
    mx = element_to_matrix(rep, ex) + element_to_matrix(rep, ey)
    summed = clifford_product(rep, element_from_matrix(rep, mx), ez)
    split = element_to_matrix(rep, clifford_product(rep, ex, ez)) + element_to_matrix(
        rep, clifford_product(rep, ey, ez)
    )
    assert element_to_matrix(rep, summed) == split


def test_signature_parsing():
    assert signature_from_name("1,1") == LORENTZIAN
    assert signature_from_name("Lorentzian") == LORENTZIAN
    assert signature_from_name("(0,2)") == RIEMANNIAN
    with pytest.raises(ValueError):
        signature_from_name("2,0")


def test_deterministic_construction():
    a = build_gamma_rep(LORENTZIAN)
    b = build_gamma_rep(LORENTZIAN)
    assert a.gamma == b.gamma and a.gamma_star == b.gamma_star
