"""Degree-(2,2) cocycles of the flat model, as an exact homogeneous system.

A normalised cochain is a pair (beta, gamma) with beta: V x S -> S
parametrised by beta_mu = a_mu 1 + b_{mu nu} Gamma^nu + c_mu Gamma_* and
gamma: Sym^2 S -> so(V). The two cocycle conditions

    2 kappa(s, beta(v, s)) + gamma(s, s) v = 0,
    beta(kappa_s, s) + gamma(s, s) . s = 0,

quadratic in s, are depolarised over a small sample set of spinors and
assembled into a linear system over the 11 parameters (3 in the chiral
case); the cohomology is its exact kernel.

so(V) bookkeeping: an element g L_* acts on vectors through
(L_* v)^rho = -varsigma eps_{mu nu} eta^{nu rho} v^mu and on spinors as
(g/2) Gamma_* s, which is the quarter-contraction spin action for the
skew matrix (L_*)_{mu nu} = varsigma eps_{mu nu}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bilinears import BilinearForm, dirac_current
from .clifford import CliffordElement, GammaRep, Mat2, element_from_matrix
from .linalg import frac, nullspace, rank
from .superalgebra import ModuleChoice, StructureConstants, beta_endomorphisms, gamma_coefficient_matrix

Vec2 = tuple[Fraction, Fraction]

FULL_COLUMNS = ("a_0", "a_1", "b_00", "b_01", "b_10", "b_11", "c_0", "c_1", "g_11", "g_12", "g_22")
CHIRAL_COLUMNS = ("a_0", "a_1", "g_11")

_SAMPLES_FULL: tuple[Vec2, ...] = (
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(1)),
)
_SAMPLES_EXTENDED: tuple[Vec2, ...] = _SAMPLES_FULL + (
    (Fraction(1), Fraction(-1)),
    (Fraction(1), Fraction(2)),
)
_SAMPLES_CHIRAL: tuple[Vec2, ...] = ((Fraction(1), Fraction(0)),)


@dataclass(frozen=True)
class SpencerParams:
    """Cocycle parameter vector (a_mu, b_{mu nu}, c_mu; gamma on Sym^2 S)."""

    a: Vec2
    b_tensor: tuple[Vec2, Vec2]
    c: Vec2
    gamma: tuple[Fraction, ...]
    module: ModuleChoice

    @staticmethod
    def from_vector(vec, module: ModuleChoice) -> "SpencerParams":
        v = [frac(x) for x in vec]
        if module is ModuleChoice.FULL:
            if len(v) != 11:
                raise ValueError("full-module parameter vector has 11 entries")
            return SpencerParams(
                (v[0], v[1]),
                ((v[2], v[3]), (v[4], v[5])),
                (v[6], v[7]),
                (v[8], v[9], v[10]),
                module,
            )
        if len(v) != 3:
            raise ValueError("chiral parameter vector has 3 entries")
        zero = Fraction(0)
        return SpencerParams(
            (v[0], v[1]), ((zero, zero), (zero, zero)), (zero, zero), (v[2],), module
        )

    def to_vector(self) -> list[Fraction]:
        if self.module is ModuleChoice.FULL:
            return [
                self.a[0],
                self.a[1],
                self.b_tensor[0][0],
                self.b_tensor[0][1],
                self.b_tensor[1][0],
                self.b_tensor[1][1],
                self.c[0],
                self.c[1],
                *self.gamma,
            ]
        return [self.a[0], self.a[1], self.gamma[0]]

    def scale(self, s) -> "SpencerParams":
        s = frac(s)
        return SpencerParams.from_vector([x * s for x in self.to_vector()], self.module)

    def beta_matrix(self, rep: GammaRep, mu: int) -> Mat2:
        m = Mat2.identity() * self.a[mu] + rep.gamma_star * self.c[mu]
        for nu in range(2):
            m = m + rep.gamma_upper(nu) * self.b_tensor[mu][nu]
        return m

    def gamma_scalar(self, s: Vec2, t: Vec2) -> Fraction:
        """Symmetric bilinear gamma(s,t) as an L_* coefficient."""
        if self.module is ModuleChoice.FULL:
            g11, g12, g22 = self.gamma
            return g11 * s[0] * t[0] + g12 * (s[0] * t[1] + s[1] * t[0]) + g22 * s[1] * t[1]
        return self.gamma[0] * s[0] * t[0]

    def free_parameter(self, sigma_b: int) -> Fraction:
        """The scale b of a canonical-shape cocycle: b_{01} (symmetric) or b_{11} (skew)."""
        if sigma_b == 1:
            return self.b_tensor[0][1]
        return self.b_tensor[1][1]


def so_vector_action(rep: GammaRep, v: Vec2) -> Vec2:
    """L_* acting on raised vector components."""
    out = [Fraction(0), Fraction(0)]
    vs = rep.varsigma
    for mu in range(2):
        for rho in range(2):
            out[rho] += v[mu] * (-vs) * rep.eps_lower(mu, rho) / rep.eta[rho]
    return (out[0], out[1])


def so_spinor_action(rep: GammaRep, s: Vec2) -> Vec2:
    half = Fraction(1, 2)
    w = rep.gamma_star.apply(s)
    return (half * w[0], half * w[1])


@dataclass(frozen=True)
class ConstraintRow:
    condition: int
    spinor: Vec2
    vector: int | None
    component: int


@dataclass(frozen=True)
class CocycleSystem:
    matrix: list[list[Fraction]]
    row_provenance: list[ConstraintRow]
    columns: tuple[str, ...]
    module: ModuleChoice


def _condition_residuals(
    rep: GammaRep, form: BilinearForm, params: SpencerParams, s: Vec2
) -> list[tuple[ConstraintRow, Fraction]]:
    """Evaluate both cocycle conditions at one sample spinor."""
    kappa = dirac_current(rep, form)
    results: list[tuple[ConstraintRow, Fraction]] = []
    g = params.gamma_scalar(s, s)
    for rho in range(2):
        beta_s = params.beta_matrix(rep, rho).apply(s)
        first = kappa.of(s, beta_s)
        e_rho = (Fraction(rho == 0), Fraction(rho == 1))
        rot = so_vector_action(rep, e_rho)
        for mu in range(2):
            value = 2 * first[mu] + g * rot[mu]
            results.append((ConstraintRow(1, s, rho, mu), value))
    k_s = kappa.of(s, s)
    acc = [Fraction(0), Fraction(0)]
    for mu in range(2):
        w = params.beta_matrix(rep, mu).apply(s)
        acc[0] += k_s[mu] * w[0]
        acc[1] += k_s[mu] * w[1]
    spin = so_spinor_action(rep, s)
    for comp in range(2):
        value = acc[comp] + g * spin[comp]
        results.append((ConstraintRow(2, s, None, comp), value))
    return results


def assemble_cocycle_system(
    flat: StructureConstants,
    rep: GammaRep,
    form: BilinearForm,
    samples: tuple[Vec2, ...] | None = None,
    conditions: tuple[int, ...] = (1, 2),
) -> CocycleSystem:
    """Rows are the depolarised conditions, columns the cochain parameters.

    The default sample set {Q1, Q2, Q1+Q2} determines a symmetric
    condition on a 2-dimensional spinor space; adding more samples must
    not change the kernel, which the test suite checks.
    """
    module = flat.basis.module_choice
    if samples is None:
        samples = _SAMPLES_FULL if module is ModuleChoice.FULL else _SAMPLES_CHIRAL
    columns = FULL_COLUMNS if module is ModuleChoice.FULL else CHIRAL_COLUMNS
    n = len(columns)
    unit_params = [
        SpencerParams.from_vector([Fraction(i == j) for j in range(n)], module) for i in range(n)
    ]
    rows: list[list[Fraction]] = []
    provenance: list[ConstraintRow] = []
    per_sample = [
        [_condition_residuals(rep, form, p, s) for p in unit_params] for s in samples
    ]
    for s_idx in range(len(samples)):
        n_rows = len(per_sample[s_idx][0])
        for r in range(n_rows):
            prov = per_sample[s_idx][0][r][0]
            if prov.condition not in conditions:
                continue
            rows.append([per_sample[s_idx][col][r][1] for col in range(n)])
            provenance.append(prov)
    return CocycleSystem(rows, provenance, columns, module)


@dataclass(frozen=True)
class CohomologyResult:
    dimension: int
    basis: tuple[SpencerParams, ...]
    canonical_rep: SpencerParams | None


def canonical_cocycle(
    rep: GammaRep, form: BilinearForm, sigma_b: int, b=1
) -> SpencerParams:
    """Closed-form generator of the full-module cohomology at parameter b.

    beta comes from the shared deformation endomorphisms; gamma repeats
    the [s,s] so(V)-correction of the deformed bracket divided by the
    (L_*)_{mu nu} = varsigma eps_{mu nu} identification.
    """
    b = frac(b)
    betas = beta_endomorphisms(rep, sigma_b, b)
    bt = []
    for mu in range(2):
        el = element_from_matrix(rep, betas[mu])
        # element stores Gamma_mu (lower) coefficients; b_{mu nu} multiplies Gamma^nu
        bt.append(tuple(el.c_mu[nu] * rep.eta[nu] for nu in range(2)))
    gmat = gamma_coefficient_matrix(rep, form, sigma_b, b)
    gamma = (gmat[(0, 0)], gmat[(0, 1)], gmat[(1, 1)])
    zero = Fraction(0)
    return SpencerParams((zero, zero), (bt[0], bt[1]), (zero, zero), gamma, ModuleChoice.FULL)


def cocycle_residual(
    flat: StructureConstants, rep: GammaRep, form: BilinearForm, params: SpencerParams
) -> Fraction:
    """Max absolute residual of both conditions over the extended sample set."""
    samples = _SAMPLES_EXTENDED if params.module is ModuleChoice.FULL else _SAMPLES_CHIRAL
    worst = Fraction(0)
    for s in samples:
        for _, value in _condition_residuals(rep, form, params, s):
            worst = max(worst, abs(value))
    return worst


def solve_H22(
    flat: StructureConstants, rep: GammaRep, form: BilinearForm
) -> CohomologyResult:
    """Exact kernel of the cocycle system, with a canonically scaled generator."""
    system = assemble_cocycle_system(flat, rep, form)
    kernel = nullspace(system.matrix, n_cols=len(system.columns))
    basis = tuple(SpencerParams.from_vector(v, system.module) for v in kernel)
    canonical = None
    if len(basis) == 1 and system.module is ModuleChoice.FULL:
        gen = basis[0]
        free = gen.free_parameter(flat.sigma_b)
        if free == 0:
            raise AssertionError("kernel generator has unexpected shape")
        canonical = gen.scale(1 / free)
        expected = canonical_cocycle(rep, form, flat.sigma_b, 1)
        if canonical.to_vector() != expected.to_vector():
            raise AssertionError("kernel generator differs from the closed-form cocycle")
    return CohomologyResult(len(basis), basis, canonical)


def condition_one_rank_equals_full_rank(
    flat: StructureConstants, rep: GammaRep, form: BilinearForm
) -> bool:
    """The second condition adds no constraints on the first's solution set."""
    full = assemble_cocycle_system(flat, rep, form)
    first = assemble_cocycle_system(flat, rep, form, conditions=(1,))
    return rank(full.matrix) == rank(first.matrix)


def so_action_on_cocycle(
    rep: GammaRep, params: SpencerParams
) -> SpencerParams:
    """Natural L_* action on Hom(V x S, S) + Hom(Sym^2 S, so(V)) cochains.

    (L.beta)(v,s) = L.(beta(v,s)) - beta(Lv,s) - beta(v,L.s) and
    (L.gamma)(s,t) = -gamma(Ls,t) - gamma(s,Lt), the bracket term on the
    gamma side vanishing because so(V) is abelian.
    """
    if params.module is not ModuleChoice.FULL:
        raise ValueError("so(V) action implemented for the full module")
    half = Fraction(1, 2)
    new_beta: list[Mat2] = []
    for mu in range(2):
        bmat = params.beta_matrix(rep, mu)
        acted = (rep.gamma_star @ bmat - bmat @ rep.gamma_star) * half
        e_mu = (Fraction(mu == 0), Fraction(mu == 1))
        rot = so_vector_action(rep, e_mu)
        for rho in range(2):
            acted = acted - params.beta_matrix(rep, rho) * rot[rho]
        new_beta.append(acted)
    a, bt, c = [], [], []
    for mu in range(2):
        el: CliffordElement = element_from_matrix(rep, new_beta[mu])
        a.append(el.c1)
        bt.append(tuple(el.c_mu[nu] * rep.eta[nu] for nu in range(2)))
        c.append(el.c_star)
    basis_s = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    vals = {}
    for ia, sa in enumerate(basis_s):
        for ib, sb in enumerate(basis_s):
            if ib < ia:
                continue
            la = so_spinor_action(rep, sa)
            lb = so_spinor_action(rep, sb)
            vals[(ia, ib)] = -params.gamma_scalar(la, sb) - params.gamma_scalar(sa, lb)
    gamma = (vals[(0, 0)], vals[(0, 1)], vals[(1, 1)])
    return SpencerParams((a[0], a[1]), (bt[0], bt[1]), (c[0], c[1]), gamma, ModuleChoice.FULL)


def cohomology_json_dict(
    result: CohomologyResult, flat: StructureConstants, system: CocycleSystem
) -> dict:
    def params_dict(p: SpencerParams) -> dict:
        return {name: str(val) for name, val in zip(system.columns, p.to_vector())}

    return {
        "signature": flat.signature.value,
        "module": flat.basis.module_choice.value,
        "bilinear_symmetry": "+" if flat.sigma_b == 1 else "-",
        "dimension": result.dimension,
        "basis": [params_dict(p) for p in result.basis],
        "canonical": params_dict(result.canonical_rep) if result.canonical_rep else None,
        "constraint_rows": [
            {
                "condition": row.condition,
                "spinor": [str(x) for x in row.spinor],
                "vector": row.vector,
                "component": row.component,
            }
            for row in system.row_provenance
        ],
    }


def extended_sample_kernel_unchanged(
    flat: StructureConstants, rep: GammaRep, form: BilinearForm
) -> bool:
    """Guard against under-sampling in the depolarisation."""
    base = assemble_cocycle_system(flat, rep, form)
    ext = assemble_cocycle_system(flat, rep, form, samples=_SAMPLES_EXTENDED)
    k1 = nullspace(base.matrix, n_cols=len(base.columns))
    k2 = nullspace(ext.matrix, n_cols=len(ext.columns))
    if len(k1) != len(k2):
        return False
    # same span: each extended-kernel vector reduces to zero against the base kernel
    stacked = [list(v) for v in k1]
    base_rank = rank(stacked)
    for v in k2:
        if rank(stacked + [list(v)]) != base_rank:
            return False
    return True

