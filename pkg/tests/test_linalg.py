from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ksa2d.linalg import frac, nullspace, rank, rref, solve_exact

F = Fraction


def test_frac_coercions():
    assert frac("3/4") == F(3, 4)
    assert frac(2) == F(2)
    assert frac(F(1, 3)) == F(1, 3)


def test_rref_identity():
    m = [[F(2), F(0)], [F(0), F(5)]]
    red, pivots = rref(m)
    assert red == [[F(1), F(0)], [F(0), F(1)]]
    assert pivots == [0, 1]


def test_rank_and_nullspace_simple():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    assert rank(m) == 1
    basis = nullspace(m)
    assert len(basis) == 2
    for v in basis:
        for row in m:
            assert sum(a * b for a, b in zip(row, v)) == 0


def test_nullspace_trivial():
    m = [[F(1), F(0)], [F(0), F(1)]]
    assert nullspace(m) == []


def test_nullspace_empty_matrix():
    basis = nullspace([], n_cols=3)
    assert len(basis) == 3
    with pytest.raises(ValueError):
        nullspace([])


def test_nullspace_normalised_free_coordinate():
    m = [[F(1), F(-2)]]
    (v,) = nullspace(m)
    assert v == [F(2), F(1)]


def test_solve_exact_overdetermined_consistent():
    m = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    assert solve_exact(m, [F(2), F(3), F(5)]) == [F(2), F(3)]


def test_solve_exact_inconsistent():
    m = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    with pytest.raises(ValueError):
        solve_exact(m, [F(2), F(3), F(6)])


def test_solve_exact_underdetermined():
    with pytest.raises(ValueError):
        solve_exact([[F(1), F(1)]], [F(2)])


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=10)


@given(
    rows=st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=6)
)
def test_nullspace_vectors_annihilate(rows):
    basis = nullspace(rows)
    assert len(basis) == 4 - rank(rows)
    for v in basis:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) == 0


@given(
    x=st.lists(rationals, min_size=3, max_size=3),
    rows=st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=5),
)
def test_solve_exact_recovers_solution(x, rows):
    if rank(rows) < 3:
        return
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    assert solve_exact(rows, rhs) == x
