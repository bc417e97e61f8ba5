"""Exact linear algebra over the rationals.

Everything here works on plain nested lists of ``fractions.Fraction`` so
that kernels and solutions come out exact; floats never enter. Matrices
are small (the largest system in the package is 18 x 11), so plain
Gaussian elimination with exact pivots is both fast enough and the most
trustworthy choice.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]
Matrix = list[Row]


def frac(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def mat_copy(m: Matrix) -> Matrix:
    return [list(row) for row in m]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
    a = mat_copy(m)
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, n_cols: int | None = None) -> list[Row]:
    """Basis of the exact kernel of m (vectors of length n_cols).

    Column count must be supplied for an empty matrix. Basis vectors are
    normalised so the free coordinate equals 1, in increasing order of
    free column, which makes the output reproducible.
    """
    if not m:
        if n_cols is None:
            raise ValueError("n_cols required for an empty matrix")
        return [[Fraction(i == j) for j in range(n_cols)] for i in range(n_cols)]
    n_cols = len(m[0])
    red, pivots = rref(m)
    free_cols = [c for c in range(n_cols) if c not in pivots]
    basis: list[Row] = []
    for fc in free_cols:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_exact(m: Matrix, rhs: Row) -> Row:
    """Solve m x = rhs exactly; the system may be overdetermined.

    Raises ValueError if inconsistent or underdetermined: callers in this
    package expect a unique exact solution and treat anything else as a
    structural failure.
    """
    if not m:
        raise ValueError("empty system")
    n_cols = len(m[0])
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            raise ValueError("inconsistent system")
    if pivots and pivots[-1] == n_cols:
        raise ValueError("inconsistent system")
    if len(pivots) < n_cols:
        raise ValueError("underdetermined system")
    x = [Fraction(0)] * n_cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][-1]
    return x
