"""Spinorial Lie derivatives and numeric assembly of Killing superalgebras.

The superalgebra of a maximally supersymmetric background is spanned by
the three closed-form Killing vector fields and two transported Killing
spinor fields. Brackets are evaluated numerically (vector Lie bracket,
Kosmann derivative, pointwise Dirac current), re-expanded in the basis
by least squares, and the resulting 5-dimensional structure-constant
table is scored against the graded Jacobi identity and aligned with the
exact algebraic deformation by a change of basis built from 1-jets at
the base point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from ..bilinears import admissible_form
from ..superalgebra import (
    ModuleChoice,
    StructureConstants,
    build_deformation,
    build_flat_model,
)
from .connection import (
    AdmissibleConnection,
    BasisDegenerate,
    NotMaxSusy,
    _gamma_float,
    killing_spinor_dimension,
    killing_spinor_field,
    spin_action_from_skew,
)
from .models import ModelGeometry, Point, d1_rich


def gradient_endomorphism(geom: ModelGeometry, field, p: Point) -> np.ndarray:
    """(nabla X)^i_j = d_j X^i + Gamma^i_{jk} X^k for a vector field."""
    gamma = geom.christoffel(p)
    x = np.asarray(field(p))
    dX = np.stack([d1_rich(lambda q: np.asarray(field(q)), p, j) for j in range(2)])
    nabla = np.zeros((2, 2))
    for i in range(2):
        for j in range(2):
            nabla[i][j] = dX[j][i] + sum(gamma[i][j][k] * x[k] for k in range(2))
    return nabla


def _skew_frame_component(geom: ModelGeometry, nabla_coord: np.ndarray, p: Point) -> float:
    """Lowered frame components of the skew part; returns the (01|12) entry."""
    frame = geom.frame(p)
    coframe = geom.coframe(p)
    eta = geom.eta_diag()
    nabla_frame = coframe @ nabla_coord @ frame.T  # (nabla X)^a_b
    lowered = np.diag(eta) @ nabla_frame
    skew = 0.5 * (lowered - lowered.T)
    return float(skew[0][1])


def kosmann_lie_derivative(
    conn: AdmissibleConnection, vector_field, spinor_field, p: Point, h: float = 1e-5
) -> np.ndarray:
    """L_X eps = nabla_X eps - (nabla X) . eps with the skew spin action.

    The spinor field is sampled on a finite-difference stencil with the
    given step; the vector field must be Killing for the result to be
    geometrically meaningful (its gradient is then already skew).
    """
    geom = conn.geometry
    geom.ensure_inside(p)
    x = np.asarray(vector_field(p))
    eps_p = np.asarray(spinor_field(p))

    nabla_eps = np.zeros(2)
    for i in range(2):
        dp = [0.0, 0.0]
        dp[i] = h
        plus = np.asarray(spinor_field((p[0] + dp[0], p[1] + dp[1])))
        minus = np.asarray(spinor_field((p[0] - dp[0], p[1] - dp[1])))
        partial = (plus - minus) / (2 * h)
        nabla_eps = nabla_eps + x[i] * (partial + conn.spin_matrix(p, i) @ eps_p)

    nabla_x = gradient_endomorphism(geom, vector_field, p)
    a01 = _skew_frame_component(geom, nabla_x, p)
    return nabla_eps - spin_action_from_skew(conn.rep, a01) @ eps_p


def lie_bracket(field_x, field_y, p: Point) -> np.ndarray:
    """[X, Y] = (X . d) Y - (Y . d) X by finite differences."""
    x = np.asarray(field_x(p))
    y = np.asarray(field_y(p))
    dY = np.stack([d1_rich(lambda q: np.asarray(field_y(q)), p, j) for j in range(2)])
    dX = np.stack([d1_rich(lambda q: np.asarray(field_x(q)), p, j) for j in range(2)])
    return np.array(
        [
            x[0] * dY[0][i] + x[1] * dY[1][i] - y[0] * dX[0][i] - y[1] * dX[1][i]
            for i in range(2)
        ]
    )


@dataclass(frozen=True)
class BracketFit:
    coefficients: np.ndarray
    residual: float


def _fit_vector_field(geom: ModelGeometry, basis_fields, values: dict[Point, np.ndarray]) -> BracketFit:
    rows, rhs = [], []
    for p, v in values.items():
        basis_at_p = [np.asarray(f(p)) for f in basis_fields]
        for i in range(2):
            rows.append([bf[i] for bf in basis_at_p])
            rhs.append(v[i])
    a = np.array(rows)
    b = np.array(rhs)
    coeff, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.abs(a @ coeff - b).max())
    return BracketFit(coeff, residual)


def _fit_spinor_field(spinor_fields, values: dict[Point, np.ndarray]) -> BracketFit:
    rows, rhs = [], []
    for p, v in values.items():
        basis_at_p = [np.asarray(f(p)) for f in spinor_fields]
        for i in range(2):
            rows.append([bf[i] for bf in basis_at_p])
            rhs.append(v[i])
    a = np.array(rows)
    b = np.array(rhs)
    coeff, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.abs(a @ coeff - b).max())
    return BracketFit(coeff, residual)


def numeric_super_jacobi_residual(tensor: np.ndarray, odd_flags: list[bool]) -> float:
    """Max residual of [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]] over triples."""
    n = tensor.shape[0]
    worst = 0.0
    for i, j, k in product(range(n), repeat=3):
        sign = -1.0 if (odd_flags[i] and odd_flags[j]) else 1.0
        residual = np.zeros(n)
        for m in range(n):
            residual += tensor[j][k][m] * tensor[i][m]
            residual -= tensor[i][j][m] * tensor[m][k]
            residual -= sign * tensor[i][k][m] * tensor[j][m]
        worst = max(worst, float(np.abs(residual).max()))
    return worst


@dataclass(frozen=True)
class KillingSuperalgebraReport:
    tensor: np.ndarray  # 5x5x5, basis order (X1, X2, X3, eps1, eps2)
    closure_residual: float
    jacobi_residual: float
    even_alignment_residual: float
    change_of_basis: np.ndarray
    algebraic: StructureConstants

    @property
    def closes(self) -> bool:
        return np.isfinite(self.closure_residual)


def _even_constants(sc: StructureConstants) -> np.ndarray:
    """Exact even-part structure constants over (P_0, P_1, L_*) as floats."""
    basis = sc.basis
    even = basis.translation_indices() + [basis.rotation_index()]
    out = np.zeros((3, 3, 3))
    for a, i in enumerate(even):
        for b, j in enumerate(even):
            for c, k in enumerate(even):
                out[a][b][c] = float(sc.tensor[i][j][k])
    return out


def _alignment_residual(phi: np.ndarray, c_alg: np.ndarray, c_num: np.ndarray) -> float:
    """Residual of phi([x,y]_alg) = [phi x, phi y]_num over the basis."""
    worst = 0.0
    for i in range(3):
        for j in range(3):
            lhs = phi @ c_alg[i][j]
            rhs = np.zeros(3)
            for m in range(3):
                for n in range(3):
                    rhs += phi[m][i] * phi[n][j] * c_num[m][n]
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def _jet_change_of_basis(
    geom: ModelGeometry, base_point: Point, c_alg: np.ndarray, c_num: np.ndarray
) -> tuple[np.ndarray, float]:
    """Change of basis from 1-jets of the Killing fields at the base point.

    A Killing field is determined by its value and the skew part of its
    covariant derivative at one point; packaging those as coordinates in
    (P_0, P_1, L_*) gives a linear isomorphism candidate up to the sign
    conventions of the rotation coordinate and of the bracket (vector
    fields anti-represent the abstract algebra), so a small discrete
    sign search picks the consistent variant.
    """
    rep = geom.rep
    coframe = geom.coframe(base_point)
    vs = float(rep.varsigma)
    columns = []
    for field in geom.killing_fields:
        v_coord = np.asarray(field(base_point))
        v_frame = coframe @ v_coord
        nabla = gradient_endomorphism(geom, field, base_point)
        a01 = _skew_frame_component(geom, nabla, base_point)
        lam = vs * a01 / float(rep.eps_lower(0, 1))
        columns.append([v_frame[0], v_frame[1], lam])
    psi = np.array(columns).T  # numeric basis -> algebraic coordinates
    if abs(np.linalg.det(psi)) < 1e-10:
        raise BasisDegenerate("Killing fields have degenerate jets at the base point")
    best = None
    for vec_sign, lam_sign in product((1.0, -1.0), repeat=2):
        scaled = psi.copy()
        scaled[:2, :] *= vec_sign
        scaled[2, :] *= lam_sign
        phi = np.linalg.inv(scaled)  # algebraic -> numeric
        res = _alignment_residual(phi, c_alg, c_num)
        if best is None or res < best[1]:
            best = (phi, res)
    return best


def assemble_killing_superalgebra(
    geom: ModelGeometry,
    conn: AdmissibleConnection,
    sample_points: list[Point] | None = None,
    transport_steps: int = 128,
) -> KillingSuperalgebraReport:
    """Numeric bracket table of the Killing superalgebra plus closure report."""
    if len(geom.killing_fields) != 3:
        raise BasisDegenerate("model space must supply three Killing fields")
    base_point = geom.base_point
    if sample_points is None:
        sample_points = geom.sample_points(3)
    if killing_spinor_dimension(conn, base_point) != 2:
        raise NotMaxSusy("background is not maximally supersymmetric")

    spinor_fields = [
        killing_spinor_field(conn, base_point, v, steps=transport_steps)
        for v in ((1.0, 0.0), (0.0, 1.0))
    ]
    vector_fields = list(geom.killing_fields)
    rep = geom.rep
    form = admissible_form(rep, conn.sigma_b)
    b_matrix = np.array(form.matrix.floats())

    tensor = np.zeros((5, 5, 5))
    odd = [False, False, False, True, True]
    closure = 0.0

    # even-even: numeric Lie brackets expanded over the Killing fields
    for i in range(3):
        for j in range(i + 1, 3):
            values = {p: lie_bracket(vector_fields[i], vector_fields[j], p) for p in sample_points}
            fit = _fit_vector_field(geom, vector_fields, values)
            closure = max(closure, fit.residual)
            tensor[i][j][:3] = fit.coefficients
            tensor[j][i][:3] = -fit.coefficients

    # even-odd: Kosmann derivatives expanded over the Killing spinors
    for i in range(3):
        for a in range(2):
            values = {
                p: kosmann_lie_derivative(conn, vector_fields[i], spinor_fields[a], p)
                for p in sample_points
            }
            fit = _fit_spinor_field(spinor_fields, values)
            closure = max(closure, fit.residual)
            tensor[i][3 + a][3:] = fit.coefficients
            tensor[3 + a][i][3:] = -fit.coefficients

    # odd-odd: pointwise Dirac currents expanded over the Killing fields
    for a in range(2):
        for b in range(a, 2):
            def current(p, a=a, b=b):
                eps_a = np.asarray(spinor_fields[a](p))
                eps_b = np.asarray(spinor_fields[b](p))
                eta = geom.eta_diag()
                frame_vec = np.zeros(2)
                for mu in range(2):
                    gam_up = _gamma_float(rep, mu) / eta[mu]
                    frame_vec[mu] = 0.5 * (
                        eps_a @ b_matrix @ (gam_up @ eps_b) + eps_b @ b_matrix @ (gam_up @ eps_a)
                    )
                # frame components to coordinate components
                return frame_vec @ geom.frame(p)

            values = {p: current(p) for p in sample_points}
            fit = _fit_vector_field(geom, vector_fields, values)
            closure = max(closure, fit.residual)
            tensor[3 + a][3 + b][:3] = fit.coefficients
            tensor[3 + b][3 + a][:3] = fit.coefficients

    jacobi = numeric_super_jacobi_residual(tensor, odd)

    flat = build_flat_model(rep, form, ModuleChoice.FULL)
    b_param = Fraction(conn.killing_function(base_point)).limit_denominator(10**6)
    algebraic = build_deformation(flat, b_param, rep, form)
    c_alg = _even_constants(algebraic)
    c_num = tensor[:3, :3, :3]
    phi, align_res = _jet_change_of_basis(geom, base_point, c_alg, c_num)

    return KillingSuperalgebraReport(tensor, closure, jacobi, align_res, phi, algebraic)
