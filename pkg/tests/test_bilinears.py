import random
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
    Mat2,
    build_gamma_rep,
    element_to_matrix,
)
from ksa2d.bilinears import (
    BilinearForm,
    CausalClass,
    NotAdmissible,
    Spinor,
    ZeroBilinear,
    causal_character,
    classify_bilinear,
    dirac_current,
    enumerate_admissible,
    fierz_decompose,
    outer_product,
    search_admissible,
)

LREP = build_gamma_rep(LORENTZIAN)
RREP = build_gamma_rep(RIEMANNIAN)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)
spinors = st.tuples(rationals, rationals)


def test_lorentzian_sigma1_signs():
    report = classify_bilinear(LREP, BilinearForm(SIGMA1, LREP))
    assert report.sign_tuple() == (1, 1, -1, 1, 1)
    assert report.admissible


def test_lorentzian_omega_signs():
    report = classify_bilinear(LREP, BilinearForm(OMEGA, LREP))
    assert report.sign_tuple() == (-1, -1, -1, 1, 1)
    assert report.admissible


def test_riemannian_identity_signs():
    report = classify_bilinear(RREP, BilinearForm(IDENTITY, RREP))
    assert report.sign_tuple() == (1, 1, 1)
    assert report.isotropy is None and report.current_isotropy is None
    assert report.admissible


def test_riemannian_omega_signs():
    report = classify_bilinear(RREP, BilinearForm(OMEGA, RREP))
    assert report.sign_tuple() == (-1, -1, 1)
    assert report.admissible


def test_mixed_form_not_admissible():
    for rep in (LREP, RREP):
        report = classify_bilinear(rep, BilinearForm(IDENTITY + OMEGA, rep))
        assert report.symmetry is None
        assert not report.admissible


def test_zero_bilinear_rejected():
    with pytest.raises(ZeroBilinear):
        classify_bilinear(LREP, BilinearForm(Mat2.zero(), LREP))


def test_enumerate_admissible_canonical_order():
    lor = enumerate_admissible(LREP)
    assert [f.matrix for f in lor] == [SIGMA1, OMEGA]
    rie = enumerate_admissible(RREP)
    assert [f.matrix for f in rie] == [IDENTITY, OMEGA]
    for rep, forms in ((LREP, lor), (RREP, rie)):
        for f in forms:
            assert classify_bilinear(rep, f).admissible


def _is_multiple(m: Mat2, canon: Mat2) -> bool:
    scale = None
    for i in range(2):
        for j in range(2):
            a, b = m[(i, j)], canon[(i, j)]
            if b == 0:
                if a != 0:
                    return False
            else:
                s = a / b
                if scale is None:
                    scale = s
                elif s != scale:
                    return False
    return scale is not None and scale != 0


@pytest.mark.parametrize("rep", [LREP, RREP], ids=["lorentzian", "riemannian"])
def test_exhaustive_search_matches_enumeration(rep):
    canon = [f.matrix for f in enumerate_admissible(rep)]
    for m in search_admissible(rep):
        assert any(_is_multiple(m, c) for c in canon)


def test_dirac_current_hand_value_riemannian():
    # oracle: kappa^mu = e^T Gamma^mu e computed by hand for e = (1, 0)
    current = dirac_current(RREP, BilinearForm(IDENTITY, RREP))
    assert current.of((1, 0), (1, 0)) == (Fraction(1), Fraction(0))


def test_dirac_current_chiral_null_lorentzian():
    form = BilinearForm(SIGMA1, LREP)
    current = dirac_current(LREP, form)
    e = Spinor.make(1, 0)
    assert e.chirality(LREP) == 1
    assert current.norm_sq(e.components) == 0
    assert current.of(e.components, e.components) != (0, 0)


def test_dirac_current_bilinearity_zero():
    current = dirac_current(LREP, BilinearForm(OMEGA, LREP))
    assert current.of((0, 0), (0, 0)) == (0, 0)


def test_dirac_current_requires_admissible():
    with pytest.raises(NotAdmissible):
        dirac_current(LREP, BilinearForm(IDENTITY + OMEGA, LREP))


@pytest.mark.parametrize("rep", [LREP, RREP], ids=["lorentzian", "riemannian"])
def test_current_symmetric_in_spinor_slots(rep):
    for form in enumerate_admissible(rep):
        current = dirac_current(rep, form)
        for mu in range(2):
            k = current.components[mu]
            assert k == k.transpose()


def test_chiral_subspaces_current_behaviour():
    # both Lorentzian bilinears restrict to nonzero currents on each chiral
    # half (identical on the + half, equal up to sign on the - half), the
    # halves are mutually kappa-orthogonal, and both bilinears vanish there
    forms = enumerate_admissible(LREP)
    currents = [dirac_current(LREP, f) for f in forms]
    plus, minus = (1, 0), (0, 1)
    vals_plus = [c.of(plus, plus) for c in currents]
    assert vals_plus[0] == vals_plus[1] != (0, 0)
    vals_minus = [c.of(minus, minus) for c in currents]
    assert vals_minus[0] != (0, 0)
    assert vals_minus[0] in (vals_minus[1], tuple(-x for x in vals_minus[1]))
    for c in currents:
        assert c.of(plus, minus) == (0, 0)
    for f in forms:
        for e in (plus, minus):
            assert f.pair(e, e) == 0


def test_fierz_hand_example_riemannian():
    # oracle: outer product of e = (1,0) with itself is [[1,0],[0,0]] = (1 + Gamma_1)/2
    form = BilinearForm(IDENTITY, RREP)
    el = fierz_decompose(RREP, form, (1, 0), (1, 0))
    assert el.c1 == Fraction(1, 2)
    assert el.c_mu == (Fraction(1, 2), Fraction(0))
    assert el.c_star == 0
    assert element_to_matrix(RREP, el) == Mat2([[1, 0], [0, 0]])


def test_fierz_zero_spinor():
    form = BilinearForm(SIGMA1, LREP)
    el = fierz_decompose(LREP, form, (0, 0), (2, 3))
    assert el.coefficients() == (0, 0, 0, 0)
    assert outer_product(form, (0, 0), (2, 3)).is_zero()


@given(e=spinors, e2=spinors)
def test_fierz_property_all_cases(e, e2):
    for rep in (LREP, RREP):
        for form in enumerate_admissible(rep):
            el = fierz_decompose(rep, form, e, e2)
            assert element_to_matrix(rep, el) == outer_product(form, e, e2)


@given(e=spinors, e2=spinors)
def test_trace_formula(e, e2):
    # tr(G e ebar') = ebar' G e for every basis endomorphism G
    for rep in (LREP, RREP):
        for form in enumerate_admissible(rep):
            for g in (IDENTITY, rep.gamma[0], rep.gamma[1], rep.gamma_star):
                lhs = (g @ outer_product(form, e, e2)).trace()
                rhs = form.pair(e2, g.apply(e))
                assert lhs == rhs


@given(e=spinors)
def test_norm_identity_exact(e):
    for rep in (LREP, RREP):
        for form in enumerate_admissible(rep):
            report = causal_character(rep, form, e)
            assert report.norm_sq == report.norm_sq_bilinear_identity


def test_causal_character_timelike():
    report = causal_character(LREP, BilinearForm(OMEGA, LREP), (1, 1))
    assert report.classification is CausalClass.TIMELIKE


def test_causal_character_riemannian_positive():
    report = causal_character(RREP, BilinearForm(IDENTITY, RREP), (3, 4))
    assert report.classification is not CausalClass.ZERO
    assert report.norm_sq > 0


def test_causal_character_null_for_chiral():
    report = causal_character(LREP, BilinearForm(SIGMA1, LREP), (0, 1))
    assert report.classification is CausalClass.NULL


def test_causal_character_zero_only_at_zero_riemannian():
    rng = random.Random(7)
    for form in enumerate_admissible(RREP):
        for _ in range(25):
            e = (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
            report = causal_character(RREP, form, e)
            if e == (0, 0):
                assert report.classification is CausalClass.ZERO
            else:
                assert report.classification is not CausalClass.ZERO


def test_lorentzian_classification_follows_symmetry():
    rng = random.Random(11)
    for form in enumerate_admissible(LREP):
        sym = classify_bilinear(LREP, form).symmetry
        for _ in range(40):
            e = (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
            if e == (0, 0):
                continue
            report = causal_character(LREP, form, e)
            chiral = Spinor(e).chirality(LREP)
            if chiral is not None:
                assert report.classification is CausalClass.NULL
            elif sym == 1:
                assert report.classification is CausalClass.SPACELIKE
            else:
                assert report.classification is CausalClass.TIMELIKE


def test_zero_spinor_chirality_is_none():
    assert Spinor.make(0, 0).chirality(LREP) is None
    assert Spinor.make(1, 0).chirality(RREP) is None
