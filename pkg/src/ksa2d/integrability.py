"""Integrability of normalised cocycles: the Theta map, its factorisation
through the Dirac current, and the commutator condition.

Theta(v, s, s) = 2 gamma(s, beta(v, s)) must kill the Dirac kernel
D = ker kappa inside Sym^2 S; the quotient map theta: V x V -> so(V) is
then recovered by exact solving and must reproduce the beta-commutator,
theta(v,w).s = [beta_v, beta_w] s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bilinears import BilinearForm, admissible_form, dirac_current
from .clifford import GammaRep, Mat2, build_gamma_rep, signature_from_name
from .linalg import nullspace, solve_exact
from .spencer import SpencerParams, cocycle_residual
from .superalgebra import ModuleChoice, StructureConstants

Vec2 = tuple[Fraction, Fraction]

_SYM2_BASIS: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (1, 1))
_UNIT = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


class NotACocycle(ValueError):
    """Input parameters do not satisfy the cocycle conditions."""


class NoFactorisation(ValueError):
    """Theta does not vanish on the Dirac kernel, so no theta exists."""


@dataclass(frozen=True)
class ThetaTensor:
    """theta packaged as L_*-coefficients t_{rho sigma} plus full components.

    Full components carry the so(V) identification back in:
    theta_{mu nu rho sigma} = t_{rho sigma} varsigma eps_{mu nu}.
    gamma_on_dirac_kernel records gamma evaluated on the kernel basis, a
    by-product deciding whether the stabiliser gamma(D) is 0 or all of
    so(V); no further subalgebra analysis happens here.
    """

    scalar: tuple[Vec2, Vec2]
    factors_through_kappa: bool
    dirac_kernel: tuple[tuple[Fraction, ...], ...]
    theta_values: tuple[tuple[Fraction, ...], ...]  # Theta(e_rho, sym2-basis)
    gamma_on_dirac_kernel: tuple[Fraction, ...]

    def component(self, rep: GammaRep, mu: int, nu: int, rho: int, sigma: int) -> Fraction:
        return self.scalar[rho][sigma] * rep.varsigma * rep.eps_lower(mu, nu)

    def is_skew(self) -> bool:
        return (
            self.scalar[0][0] == 0
            and self.scalar[1][1] == 0
            and self.scalar[0][1] == -self.scalar[1][0]
        )


def _resolve(flat: StructureConstants, rep, form):
    if rep is None:
        rep = build_gamma_rep(signature_from_name(flat.signature.value))
    if form is None:
        form = admissible_form(rep, flat.sigma_b)
    return rep, form


def theta_on_basis(
    rep: GammaRep, cocycle: SpencerParams, rho: int
) -> tuple[Fraction, Fraction, Fraction]:
    """Theta(e_rho, -) on the Sym^2 basis, by polarising 2 gamma(s, beta_rho s)."""
    beta = cocycle.beta_matrix(rep, rho)
    out = []
    for a, b in _SYM2_BASIS:
        sa, sb = _UNIT[a], _UNIT[b]
        val = cocycle.gamma_scalar(sa, beta.apply(sb)) + cocycle.gamma_scalar(sb, beta.apply(sa))
        out.append(val)
    return tuple(out)


def compute_theta(
    cocycle: SpencerParams,
    flat: StructureConstants,
    rep: GammaRep | None = None,
    form: BilinearForm | None = None,
) -> ThetaTensor:
    """Factor Theta through the Dirac current and recover theta exactly."""
    rep, form = _resolve(flat, rep, form)
    if cocycle.module is not ModuleChoice.FULL:
        raise ValueError("theta factorisation applies to the full module")
    if cocycle_residual(flat, rep, form, cocycle) != 0:
        raise NotACocycle("parameters fail the cocycle conditions")

    kappa = dirac_current(rep, form).matrix()  # 2 x 3 over the Sym^2 basis
    kernel = nullspace(kappa)
    theta_values = tuple(theta_on_basis(rep, cocycle, rho) for rho in range(2))

    for d in kernel:
        for rho in range(2):
            if sum(c * v for c, v in zip(d, theta_values[rho])) != 0:
                raise NoFactorisation("Theta does not annihilate the Dirac kernel")

    scalar_rows = []
    for rho in range(2):
        # solve t_{rho sigma} kappa^sigma(w_j) = Theta(e_rho, w_j) over the 3 basis w_j
        system = [[kappa[0][j], kappa[1][j]] for j in range(3)]
        rhs = list(theta_values[rho])
        try:
            sol = solve_exact(system, rhs)
        except ValueError as exc:
            raise NoFactorisation(str(exc)) from exc
        scalar_rows.append((sol[0], sol[1]))

    gamma_basis = [
        cocycle.gamma_scalar(_UNIT[a], _UNIT[b]) for a, b in _SYM2_BASIS
    ]
    gamma_on_kernel = tuple(
        sum(c * g for c, g in zip(d, gamma_basis)) for d in kernel
    )
    tensor = ThetaTensor(
        (scalar_rows[0], scalar_rows[1]),
        True,
        tuple(tuple(d) for d in kernel),
        theta_values,
        gamma_on_kernel,
    )

    b = cocycle.free_parameter(flat.sigma_b)
    lead = rep.varsigma if flat.sigma_b == 1 else Fraction(1)
    for rho in range(2):
        for sigma in range(2):
            expected = lead * 4 * b * b * rep.eps_lower(rho, sigma)
            if tensor.scalar[rho][sigma] != expected:
                raise AssertionError("theta differs from its closed form")
    if not tensor.is_skew():
        raise AssertionError("theta is not skew-symmetric")
    return tensor


@dataclass(frozen=True)
class IntegrabilityReport:
    passed: bool
    commutator_matches_theta: bool
    commutator_matches_closed_form: bool


def check_integrability(
    theta: ThetaTensor,
    cocycle: SpencerParams,
    flat: StructureConstants,
    rep: GammaRep | None = None,
    form: BilinearForm | None = None,
) -> IntegrabilityReport:
    """Verify theta(v,w).s = beta(v, beta(w, s)) - beta(w, beta(v, s)) exactly."""
    rep, form = _resolve(flat, rep, form)
    half = Fraction(1, 2)
    matches_theta = True
    matches_closed = True
    b = cocycle.free_parameter(flat.sigma_b)
    lead = rep.varsigma if flat.sigma_b == 1 else Fraction(1)
    for mu in range(2):
        for nu in range(2):
            lhs: Mat2 = rep.gamma_star * (theta.scalar[mu][nu] * half)
            bm = cocycle.beta_matrix(rep, mu)
            bn = cocycle.beta_matrix(rep, nu)
            comm = bm @ bn - bn @ bm
            if lhs != comm:
                matches_theta = False
            closed = rep.gamma_star * (lead * 2 * b * b * rep.eps_lower(mu, nu))
            if comm != closed:
                matches_closed = False
    return IntegrabilityReport(matches_theta and matches_closed, matches_theta, matches_closed)
