"""Admissible bilinears on the pinor module, their Dirac currents and the
Fierz rearrangement.

A bilinear B on S = R^2 pairs spinors as B(e, e') = e^a B_ab e'^b. It is
admissible when it has a definite symmetry sign, a definite type sign
under Clifford multiplication, and (when the spin group splits S into
chiral halves, i.e. in the Lorentzian case) the halves are either
mutually B-orthogonal or both B-isotropic. Each signature carries exactly
two admissible bilinears up to scale, and both induce a symmetric Dirac
current kappa: Sym^2 S -> V.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .clifford import (
    IDENTITY,
    OMEGA,
    SIGMA1,
    CliffordElement,
    GammaRep,
    Mat2,
    SignatureKind,
    element_to_matrix,
)
from .linalg import frac

Vec2 = tuple[Fraction, Fraction]


class ZeroBilinear(ValueError):
    """The zero matrix is not a bilinear pairing worth classifying."""


class NotAdmissible(ValueError):
    """Operation requires an admissible bilinear."""


@dataclass(frozen=True)
class Spinor:
    components: Vec2

    @staticmethod
    def make(a, b) -> "Spinor":
        return Spinor((frac(a), frac(b)))

    def is_zero(self) -> bool:
        return self.components[0] == 0 and self.components[1] == 0

    def chirality(self, rep: GammaRep):
        """Eigenvalue under Gamma_{01} = sigma_3 when defined, else None.

        Only meaningful in the Lorentzian signature, where span(e1) and
        span(e2) are the +1 and -1 eigenspaces. The zero spinor lies in
        both, so its label is None.
        """
        if rep.signature.kind is not SignatureKind.LORENTZIAN_11:
            return None
        a, b = self.components
        if a == 0 and b == 0:
            return None
        if b == 0:
            return 1
        if a == 0:
            return -1
        return None


def _spinor(v) -> Vec2:
    if isinstance(v, Spinor):
        return v.components
    return (frac(v[0]), frac(v[1]))


@dataclass(frozen=True)
class BilinearForm:
    matrix: Mat2
    rep: GammaRep

    def pair(self, e, e2) -> Fraction:
        a = _spinor(e)
        w = self.matrix.apply(_spinor(e2))
        return a[0] * w[0] + a[1] * w[1]

    def conjugate(self, e) -> Vec2:
        """Row covector e-bar with components e^a B_ab."""
        a = _spinor(e)
        r = self.matrix.rows
        return (a[0] * r[0][0] + a[1] * r[1][0], a[0] * r[0][1] + a[1] * r[1][1])

    @property
    def symmetry(self):
        return _matrix_sign(self.matrix.transpose(), self.matrix)


def _matrix_sign(a: Mat2, b: Mat2):
    """Return s in {+1,-1} with a == s*b, or None."""
    if a == b:
        return 1
    if a == -b:
        return -1
    return None


@dataclass(frozen=True)
class AdmissibilityReport:
    """Signs (sigma_B, tau_B, iota_B; sigma_kappa, iota_kappa) where defined.

    The current isotropy is read as the same orthogonal/isotropic
    dichotomy the bilinear enjoys, transplanted to the current on the
    chiral split: +1 when the halves are mutually kappa-orthogonal, -1
    when kappa vanishes on both halves. Only the bilinear notion has a
    textbook definition; this reading reproduces the expected +1 entries
    for both Lorentzian currents.
    """

    symmetry: int | None
    type_sign: int | None
    isotropy: int | None
    admissible: bool
    current_symmetry: int | None
    current_isotropy: int | None

    def sign_tuple(self) -> tuple:
        """Signs in table order; isotropy entries omitted when undefined."""
        if self.isotropy is None and self.current_isotropy is None:
            return (self.symmetry, self.type_sign, self.current_symmetry)
        return (
            self.symmetry,
            self.type_sign,
            self.isotropy,
            self.current_symmetry,
            self.current_isotropy,
        )


def classify_bilinear(rep: GammaRep, form: BilinearForm) -> AdmissibilityReport:
    """Decide all admissibility signs by exhaustive evaluation on the basis.

    The matrix conditions are finite and exact: symmetry is B^T = s B,
    type is B Gamma_mu = t Gamma_mu^T B for a single t over both mu, and
    isotropy inspects the chiral blocks in the Lorentzian case.
    """
    b = form.matrix
    if b.is_zero():
        raise ZeroBilinear("bilinear form is zero")

    symmetry = _matrix_sign(b.transpose(), b)

    type_sign = None
    for t in (1, -1):
        if all(b @ rep.gamma[mu] == (rep.gamma[mu].transpose() @ b) * t for mu in range(2)):
            type_sign = t
            break

    lorentzian = rep.signature.kind is SignatureKind.LORENTZIAN_11
    isotropy = None
    if lorentzian:
        r = b.rows
        if r[0][1] == 0 and r[1][0] == 0:
            isotropy = 1
        elif r[0][0] == 0 and r[1][1] == 0:
            isotropy = -1

    admissible = symmetry is not None and type_sign is not None
    if lorentzian:
        admissible = admissible and isotropy is not None

    current_symmetry = None
    if symmetry is not None and type_sign is not None:
        current_symmetry = symmetry * type_sign

    current_isotropy = None
    if lorentzian and admissible:
        kappa = dirac_current_unchecked(rep, form)
        cross_zero = all(kappa.components[mu][(0, 1)] == 0 for mu in range(2))
        diag_zero = all(
            kappa.components[mu][(a, a)] == 0 for mu in range(2) for a in range(2)
        )
        if cross_zero:
            current_isotropy = 1
        elif diag_zero:
            current_isotropy = -1

    return AdmissibilityReport(
        symmetry, type_sign, isotropy, admissible, current_symmetry, current_isotropy
    )


def enumerate_admissible(rep: GammaRep) -> list[BilinearForm]:
    """The two canonical admissible bilinears, symmetric one first."""
    if rep.signature.kind is SignatureKind.LORENTZIAN_11:
        forms = [BilinearForm(SIGMA1, rep), BilinearForm(OMEGA, rep)]
    else:
        forms = [BilinearForm(IDENTITY, rep), BilinearForm(OMEGA, rep)]
    for f in forms:
        if not classify_bilinear(rep, f).admissible:
            raise AssertionError("canonical form failed admissibility")
    return forms


def admissible_form(rep: GammaRep, symmetry: int) -> BilinearForm:
    """Canonical admissible bilinear with the given symmetry sign."""
    for f in enumerate_admissible(rep):
        if classify_bilinear(rep, f).symmetry == symmetry:
            return f
    raise ValueError(f"no admissible bilinear with symmetry {symmetry}")


def search_admissible(rep: GammaRep, coeff_range=(-2, -1, 0, 1, 2)) -> list[Mat2]:
    """Exhaustive search over small integer matrices for admissible bilinears.

    Self-test helper backing the claim that every admissible form is a
    scalar multiple of one of the two canonical choices.
    """
    found: list[Mat2] = []
    for entries in itertools.product(coeff_range, repeat=4):
        m = Mat2([entries[:2], entries[2:]])
        if m.is_zero():
            continue
        if classify_bilinear(rep, BilinearForm(m, rep)).admissible:
            found.append(m)
    return found


@dataclass(frozen=True)
class DiracCurrent:
    """Components kappa^mu_ab, symmetric in the spinor slots."""

    components: tuple[Mat2, Mat2]
    rep: GammaRep

    def of(self, e, e2) -> Vec2:
        """kappa(e, e') as raised orthonormal-frame components."""
        a, b = _spinor(e), _spinor(e2)
        out = []
        for mu in range(2):
            k = self.components[mu]
            out.append(sum(a[i] * k[(i, j)] * b[j] for i in range(2) for j in range(2)))
        return (out[0], out[1])

    def squared(self, e) -> Vec2:
        return self.of(e, e)

    def norm_sq(self, e) -> Fraction:
        v = self.of(e, e)
        eta = self.rep.eta
        return eta[0] * v[0] * v[0] + eta[1] * v[1] * v[1]

    def matrix(self) -> list[list[Fraction]]:
        """kappa as a 2x3 matrix over the Sym^2 basis {Q1.Q1, Q1.Q2, Q2.Q2}."""
        return [
            [self.components[mu][(0, 0)], self.components[mu][(0, 1)], self.components[mu][(1, 1)]]
            for mu in range(2)
        ]


def dirac_current_unchecked(rep: GammaRep, form: BilinearForm) -> DiracCurrent:
    comps = []
    for mu in range(2):
        raw = form.matrix @ rep.gamma_upper(mu)
        sym = (raw + raw.transpose()) * Fraction(1, 2)
        comps.append(sym)
    return DiracCurrent((comps[0], comps[1]), rep)


def dirac_current(rep: GammaRep, form: BilinearForm) -> DiracCurrent:
    """Current defined by eta(kappa(e,e'), v) = B(e, v.e'), i.e. kappa^mu = B Gamma^mu.

    The raw matrix B Gamma^mu is already symmetric for admissible B with
    symmetric current; the constructor symmetrises and verifies both the
    symmetry and the defining pairing relation on basis triples.
    """
    report = classify_bilinear(rep, form)
    if not report.admissible:
        raise NotAdmissible("Dirac current requires an admissible bilinear")
    current = dirac_current_unchecked(rep, form)
    for mu in range(2):
        raw = form.matrix @ rep.gamma_upper(mu)
        if raw != current.components[mu]:
            raise AssertionError("current is not symmetric in the spinor slots")
    basis = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for e in basis:
        for e2 in basis:
            k = current.of(e, e2)
            for nu in range(2):
                lhs = rep.eta[nu] * k[nu]
                rhs = form.pair(e, rep.gamma[nu].apply(e2))
                if lhs != rhs:
                    raise AssertionError("current fails its defining pairing relation")
    return current


def outer_product(form: BilinearForm, e, e2) -> Mat2:
    """(e e'-bar)^a_b = e^a e'^c B_cb."""
    a = _spinor(e)
    conj = form.conjugate(e2)
    return Mat2([[a[0] * conj[0], a[0] * conj[1]], [a[1] * conj[0], a[1] * conj[1]]])


def fierz_decompose(rep: GammaRep, form: BilinearForm, e, e2) -> CliffordElement:
    """Expand the outer product e (e'-bar) over the gamma basis.

    Coefficients are (e'bar e)/2, (e'bar Gamma^mu e)/2 on Gamma_mu, and
    -varsigma (e'bar Gamma_* e)/2; the reconstruction is then checked to
    equal the outer product exactly.
    """
    if not classify_bilinear(rep, form).admissible:
        raise NotAdmissible("Fierz rearrangement requires an admissible bilinear")
    ea, eb = _spinor(e), _spinor(e2)
    half = Fraction(1, 2)
    c1 = half * form.pair(eb, ea)
    c_mu = tuple(half * form.pair(eb, rep.gamma_upper(mu).apply(ea)) for mu in range(2))
    c_star = -half * rep.varsigma * form.pair(eb, rep.gamma_star.apply(ea))
    element = CliffordElement.make(c1, c_mu, c_star)
    if element_to_matrix(rep, element) != outer_product(form, ea, eb):
        raise AssertionError("Fierz reconstruction failed")
    return element


class CausalClass(enum.Enum):
    ZERO = "zero"
    NULL = "null"
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"


@dataclass(frozen=True)
class CausalReport:
    classification: CausalClass
    norm_sq: Fraction
    norm_sq_bilinear_identity: Fraction
    current: Vec2


def causal_character(rep: GammaRep, form: BilinearForm, e) -> CausalReport:
    """Classify kappa_e and cross-check |kappa_e|^2 = (ebar e)^2 + varsigma (ebar Gamma_* e)^2."""
    current = dirac_current(rep, form)
    ea = _spinor(e)
    k = current.of(ea, ea)
    norm_sq = current.norm_sq(ea)
    ip = form.pair(ea, ea)
    vol = form.pair(ea, rep.gamma_star.apply(ea))
    identity_value = ip * ip + rep.varsigma * vol * vol
    if norm_sq != identity_value:
        raise AssertionError("norm identity violated")
    if k[0] == 0 and k[1] == 0:
        cls = CausalClass.ZERO
    elif norm_sq == 0:
        cls = CausalClass.NULL
    elif norm_sq > 0:
        cls = CausalClass.SPACELIKE
    else:
        cls = CausalClass.TIMELIKE
    return CausalReport(cls, norm_sq, identity_value, k)
