"""Graded Lie superalgebras on V + S + so(V) via exact structure constants.

The flat model has brackets [L,v] = so(V)-rotation, [L,s] = Gamma_*/2,
[s,s'] = kappa(s,s') and everything else zero. Its one-parameter filtered
deformations add a [v,w] term landing in so(V), a [v,s] term given by the
cocycle endomorphisms beta_mu, and an so(V)-valued correction to [s,s].
Both families are verified here by brute-force graded Jacobi checking
over all basis triples, in exact arithmetic.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .bilinears import BilinearForm, NotAdmissible, classify_bilinear, dirac_current
from .clifford import GammaRep, Mat2, SignatureKind, build_gamma_rep, signature_from_name
from .linalg import frac

_ZERO = Fraction(0)


class ModuleChoice(enum.Enum):
    FULL = "full"
    CHIRAL_PLUS = "chiral+"


class ChiralInRiemannian(ValueError):
    """Chiral spinor modules only exist in the Lorentzian signature."""


class ChiralDeformation(ValueError):
    """The chiral flat model admits no non-trivial filtered deformation."""


@dataclass(frozen=True)
class BasisElement:
    label: str
    degree: int
    odd: bool


@dataclass(frozen=True)
class GradedBasis:
    elements: tuple[BasisElement, ...]
    module_choice: ModuleChoice

    @property
    def dim(self) -> int:
        return len(self.elements)

    @property
    def dim_odd(self) -> int:
        return sum(1 for e in self.elements if e.odd)

    def index(self, label: str) -> int:
        for i, e in enumerate(self.elements):
            if e.label == label:
                return i
        raise KeyError(label)

    def translation_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.elements) if e.degree == -2]

    def rotation_index(self) -> int:
        return next(i for i, e in enumerate(self.elements) if e.degree == 0)

    def odd_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.elements) if e.odd]


def _make_basis(rep: GammaRep, module: ModuleChoice) -> GradedBasis:
    off = rep.signature.index_offset
    elems = [
        BasisElement(f"P_{off}", -2, False),
        BasisElement(f"P_{off + 1}", -2, False),
        BasisElement("L_*", 0, False),
    ]
    n_odd = 2 if module is ModuleChoice.FULL else 1
    for a in range(n_odd):
        elems.append(BasisElement(f"Q_{a + 1}", -1, True))
    return GradedBasis(tuple(elems), module)


@dataclass(frozen=True)
class StructureConstants:
    """Bracket tensor c^k_ij over a graded basis, plus provenance metadata."""

    basis: GradedBasis
    tensor: tuple  # tensor[i][j][k] = coefficient of basis k in [i, j]
    signature: SignatureKind
    sigma_b: int
    deformation_parameter: Fraction

    @property
    def dim(self) -> int:
        return self.basis.dim

    def bracket(self, i: int, j: int) -> tuple:
        return self.tensor[i][j]

    def bracket_by_label(self, left: str, right: str) -> dict[str, Fraction]:
        row = self.tensor[self.basis.index(left)][self.basis.index(right)]
        return {
            self.basis.elements[k].label: row[k] for k in range(self.dim) if row[k] != 0
        }

    def graded_antisymmetry_holds(self) -> bool:
        """[x,y] = -(-1)^{|x||y|}[y,x] entry-wise: mirror sign is +1 only for odd-odd."""
        for i in range(self.dim):
            for j in range(self.dim):
                both_odd = self.basis.elements[i].odd and self.basis.elements[j].odd
                sign = 1 if both_odd else -1
                for k in range(self.dim):
                    if self.tensor[i][j][k] != sign * self.tensor[j][i][k]:
                        return False
        return True


class _TensorBuilder:
    def __init__(self, basis: GradedBasis):
        self.basis = basis
        n = basis.dim
        self.t = [[[_ZERO for _ in range(n)] for _ in range(n)] for _ in range(n)]

    def set(self, i: int, j: int, coeffs: dict[int, Fraction]):
        """Record [i, j] and mirror [j, i] with the graded sign."""
        both_odd = self.basis.elements[i].odd and self.basis.elements[j].odd
        mirror = 1 if both_odd else -1
        for k, c in coeffs.items():
            self.t[i][j][k] = self.t[i][j][k] + c
            if i != j:
                self.t[j][i][k] = self.t[j][i][k] + mirror * c

    def freeze(self) -> tuple:
        return tuple(tuple(tuple(row) for row in plane) for plane in self.t)


def build_flat_model(rep: GammaRep, form: BilinearForm, module: ModuleChoice) -> StructureConstants:
    """Flat model superalgebra for the Dirac current of an admissible bilinear."""
    report = classify_bilinear(rep, form)
    if not report.admissible:
        raise NotAdmissible("flat model needs an admissible bilinear")
    if module is ModuleChoice.CHIRAL_PLUS and rep.signature.kind is not SignatureKind.LORENTZIAN_11:
        raise ChiralInRiemannian("no chiral spinor module in the definite signature")

    basis = _make_basis(rep, module)
    kappa = dirac_current(rep, form)
    builder = _TensorBuilder(basis)
    p_idx = basis.translation_indices()
    l_idx = basis.rotation_index()
    q_idx = basis.odd_indices()
    vs = rep.varsigma

    # [L_*, P_mu] = -varsigma eps_{mu nu} P^nu
    for mu in range(2):
        coeffs = {}
        for nu in range(2):
            c = -vs * rep.eps_lower(mu, nu) / rep.eta[nu]
            if c != 0:
                coeffs[p_idx[nu]] = c
        builder.set(l_idx, p_idx[mu], coeffs)

    # [L_*, Q_a] = (Gamma_*/2) acting columnwise; chiral module keeps spinor slot 1
    for col, qa in enumerate(q_idx):
        coeffs = {}
        for row, qb in enumerate(q_idx):
            c = rep.gamma_star[(row, col)] / 2
            if c != 0:
                coeffs[qb] = c
        builder.set(l_idx, qa, coeffs)

    # [Q_a, Q_b] = kappa^mu_ab P_mu
    for ia, qa in enumerate(q_idx):
        for ib, qb in enumerate(q_idx):
            if qb < qa:
                continue
            coeffs = {}
            for mu in range(2):
                c = kappa.components[mu][(ia, ib)]
                if c != 0:
                    coeffs[p_idx[mu]] = c
            builder.set(qa, qb, coeffs)

    return StructureConstants(
        basis, builder.freeze(), rep.signature.kind, report.symmetry, Fraction(0)
    )


def beta_endomorphisms(rep: GammaRep, sigma_b: int, b: Fraction) -> tuple[Mat2, Mat2]:
    """The cocycle endomorphisms beta_mu of the one-parameter deformation.

    beta_mu = b eps_{mu nu} Gamma^nu for symmetric bilinears and
    beta_mu = b Gamma_mu for skew ones.
    """
    b = frac(b)
    out = []
    for mu in range(2):
        if sigma_b == 1:
            m = Mat2.zero()
            for nu in range(2):
                m = m + rep.gamma_upper(nu) * (b * rep.eps_lower(mu, nu))
        else:
            m = rep.gamma[mu] * b
        out.append(m)
    return (out[0], out[1])


def gamma_coefficient_matrix(rep: GammaRep, form: BilinearForm, sigma_b: int, b: Fraction) -> Mat2:
    """so(V)-valued [s,s] correction as a symmetric spinor-index matrix of L_* coefficients.

    Reads +varsigma 2b B_(ab) in the symmetric case and
    -varsigma 2b (B Gamma_*)_(ab) in the skew case.
    """
    b = frac(b)
    vs = rep.varsigma
    if sigma_b == 1:
        raw = form.matrix * (2 * b * vs)
    else:
        raw = (form.matrix @ rep.gamma_star) * (-2 * b * vs)
    return (raw + raw.transpose()) * Fraction(1, 2)


def build_deformation(
    flat: StructureConstants, b, rep: GammaRep | None = None, form: BilinearForm | None = None
) -> StructureConstants:
    """Filtered deformation of a full-module flat model with parameter b."""
    b = frac(b)
    if flat.basis.module_choice is ModuleChoice.CHIRAL_PLUS:
        if b != 0:
            raise ChiralDeformation(
                "chiral flat model has trivial degree-2 cohomology; only b = 0 is allowed"
            )
        return flat
    if b == 0:
        return flat

    if rep is None:
        rep = build_gamma_rep(
            signature_from_name(flat.signature.value)
        )
    if form is None:
        from .bilinears import admissible_form

        form = admissible_form(rep, flat.sigma_b)

    basis = flat.basis
    builder = _TensorBuilder(basis)
    n = basis.dim
    # start from the flat tensor
    for i in range(n):
        for j in range(i, n):
            coeffs = {k: flat.tensor[i][j][k] for k in range(n) if flat.tensor[i][j][k] != 0}
            if coeffs:
                builder.set(i, j, coeffs)

    p_idx = basis.translation_indices()
    l_idx = basis.rotation_index()
    q_idx = basis.odd_indices()
    vs = rep.varsigma
    sigma_b = flat.sigma_b

    # [P_mu, P_nu] = (varsigma if sigma_b=+1 else 1) * 4 b^2 eps_{mu nu} L_*
    pp_sign = vs if sigma_b == 1 else Fraction(1)
    builder.set(p_idx[0], p_idx[1], {l_idx: pp_sign * 4 * b * b * rep.eps_lower(0, 1)})

    # [P_mu, Q_a] = beta_mu acting columnwise
    betas = beta_endomorphisms(rep, sigma_b, b)
    for mu in range(2):
        for col, qa in enumerate(q_idx):
            coeffs = {}
            for row, qb in enumerate(q_idx):
                c = betas[mu][(row, col)]
                if c != 0:
                    coeffs[qb] = c
            builder.set(p_idx[mu], qa, coeffs)

    # [Q_a, Q_b] gains the so(V)-valued term
    gmat = gamma_coefficient_matrix(rep, form, sigma_b, b)
    for ia, qa in enumerate(q_idx):
        for ib, qb in enumerate(q_idx):
            if qb < qa:
                continue
            c = gmat[(ia, ib)]
            if c != 0:
                builder.set(qa, qb, {l_idx: c})

    return StructureConstants(basis, builder.freeze(), flat.signature, sigma_b, b)


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[str, str, str]
    residual: tuple[Fraction, ...]


@dataclass(frozen=True)
class JacobiReport:
    violations: tuple[JacobiViolation, ...]

    @property
    def holds(self) -> bool:
        return not self.violations


def super_jacobi_check(sc: StructureConstants) -> JacobiReport:
    """Brute-force graded Jacobi check over every ordered basis triple.

    Uses the super Leibniz form [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]].
    """
    n = sc.dim
    odd = [e.odd for e in sc.basis.elements]
    labels = [e.label for e in sc.basis.elements]
    t = sc.tensor
    violations = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                sign = -1 if (odd[i] and odd[j]) else 1
                residual = [_ZERO] * n
                for m in range(n):
                    c = t[j][k][m]
                    if c != 0:
                        for r in range(n):
                            residual[r] += c * t[i][m][r]
                    c = t[i][j][m]
                    if c != 0:
                        for r in range(n):
                            residual[r] -= c * t[m][k][r]
                    c = t[i][k][m]
                    if c != 0:
                        for r in range(n):
                            residual[r] -= sign * t[j][m][r] * c
                if any(x != 0 for x in residual):
                    violations.append(
                        JacobiViolation((labels[i], labels[j], labels[k]), tuple(residual))
                    )
    return JacobiReport(tuple(violations))


class GeometryLabel(enum.Enum):
    FLAT = "flat"
    H2 = "h2"
    DS2 = "ds2"
    ADS2 = "ads2"


def classify_even_part(sc: StructureConstants) -> tuple[GeometryLabel, Fraction]:
    """Model-space label of the even part and its scalar curvature +-8b^2."""
    if sc.basis.module_choice is not ModuleChoice.FULL:
        raise ValueError("even-part classification applies to the full module")
    b = sc.deformation_parameter
    if b == 0:
        return (GeometryLabel.FLAT, Fraction(0))
    r = 8 * b * b
    if sc.signature is SignatureKind.RIEMANNIAN_02:
        return (GeometryLabel.H2, -r)
    if sc.sigma_b == 1:
        return (GeometryLabel.DS2, r)
    return (GeometryLabel.ADS2, -r)


def associated_graded(sc: StructureConstants) -> StructureConstants:
    """Drop filtration-raising bracket entries, leaving the graded part."""
    basis = sc.basis
    degree = [e.degree for e in basis.elements]
    n = basis.dim
    t = [
        [
            [
                sc.tensor[i][j][k] if degree[k] == degree[i] + degree[j] else _ZERO
                for k in range(n)
            ]
            for j in range(n)
        ]
        for i in range(n)
    ]
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in t)
    return StructureConstants(basis, frozen, sc.signature, sc.sigma_b, Fraction(0))


def corrupt_bracket(sc: StructureConstants, left: str, right: str) -> StructureConstants:
    """Negative-control fixture: flip the sign of one bracket (and its mirror)."""
    i, j = sc.basis.index(left), sc.basis.index(right)
    n = sc.dim
    t = [[list(row) for row in plane] for plane in sc.tensor]
    t[i][j] = [-c for c in t[i][j]]
    if i != j:
        t[j][i] = [-c for c in t[j][i]]
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in t)
    return StructureConstants(sc.basis, frozen, sc.signature, sc.sigma_b, sc.deformation_parameter)


def to_json_dict(sc: StructureConstants) -> dict:
    basis = [
        {"label": e.label, "degree": e.degree, "parity": "odd" if e.odd else "even"}
        for e in sc.basis.elements
    ]
    brackets = []
    n = sc.dim
    for i in range(n):
        for j in range(i, n):
            row = sc.tensor[i][j]
            coeffs = {
                sc.basis.elements[k].label: str(row[k]) for k in range(n) if row[k] != 0
            }
            if coeffs:
                brackets.append(
                    {
                        "left": sc.basis.elements[i].label,
                        "right": sc.basis.elements[j].label,
                        "result": coeffs,
                    }
                )
    return {
        "signature": sc.signature.value,
        "module": sc.basis.module_choice.value,
        "bilinear_symmetry": "+" if sc.sigma_b == 1 else "-",
        "deformation_parameter": str(sc.deformation_parameter),
        "basis": basis,
        "brackets": brackets,
    }


def to_json(sc: StructureConstants, indent: int | None = 2) -> str:
    return json.dumps(to_json_dict(sc), indent=indent)


def from_json_dict(doc: dict) -> StructureConstants:
    elements = tuple(
        BasisElement(e["label"], int(e["degree"]), e["parity"] == "odd") for e in doc["basis"]
    )
    module = ModuleChoice(doc["module"])
    basis = GradedBasis(elements, module)
    builder = _TensorBuilder(basis)
    for entry in doc["brackets"]:
        i, j = basis.index(entry["left"]), basis.index(entry["right"])
        coeffs = {basis.index(lbl): frac(val) for lbl, val in entry["result"].items()}
        builder.set(i, j, coeffs)
    return StructureConstants(
        basis,
        builder.freeze(),
        SignatureKind(doc["signature"]),
        1 if doc["bilinear_symmetry"] == "+" else -1,
        frac(doc["deformation_parameter"]),
    )


def from_json(text: str) -> StructureConstants:
    return from_json_dict(json.loads(text))
