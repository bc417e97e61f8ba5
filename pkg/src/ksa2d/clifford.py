"""Exact 2x2 realisations of the Clifford algebras Cl(1,1) and Cl(0,2).

Conventions, fixed once here and relied on everywhere else:

* Clifford relation with the plus sign: v.v = +eta(v,v), so the definite
  signature carries a positive-definite inner product. (The opposite,
  minus, convention exists in the literature; it is not implemented here,
  and with real coefficients it effectively swaps the roles of real and
  imaginary Killing numbers downstream.)
* Lorentzian metric is mostly-positive, eta = diag(-1, +1); the sign
  varsigma = det(eta) is -1 there and +1 in the definite case.
* Orthonormal index labels are {0,1} (Lorentzian) and {1,2} (Riemannian);
  internal storage is 0-based with a display offset.
* Levi-Civita symbol: lowered eps_{01} = +1 and eps_{12} = +1; raising
  both indices with eta gives eps^{01} = -1 and eps^{12} = +1.
* Gamma matrices: Lorentzian Gamma_0 = Omega (= [[0,1],[-1,0]]),
  Gamma_1 = sigma_1, volume element Gamma_* = sigma_3; Riemannian
  Gamma_1 = sigma_3, Gamma_2 = sigma_1, Gamma_* = Omega. In both cases
  Gamma_{mu nu} = eps_{mu nu} Gamma_* is computed on demand, never stored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .linalg import frac

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SignatureKind(enum.Enum):
    RIEMANNIAN_02 = "0,2"
    LORENTZIAN_11 = "1,1"


@dataclass(frozen=True)
class Signature:
    """Metric data: kind, diagonal eta and the sign varsigma = det(eta)."""

    kind: SignatureKind

    @property
    def eta(self) -> tuple[Fraction, Fraction]:
        if self.kind is SignatureKind.LORENTZIAN_11:
            return (-_ONE, _ONE)
        return (_ONE, _ONE)

    @property
    def varsigma(self) -> Fraction:
        return self.eta[0] * self.eta[1]

    @property
    def index_offset(self) -> int:
        """Display offset: orthonormal indices start at 0 or 1."""
        return 0 if self.kind is SignatureKind.LORENTZIAN_11 else 1

    def index_labels(self) -> tuple[int, int]:
        off = self.index_offset
        return (off, off + 1)


RIEMANNIAN = Signature(SignatureKind.RIEMANNIAN_02)
LORENTZIAN = Signature(SignatureKind.LORENTZIAN_11)


def signature_from_name(name: str) -> Signature:
    key = name.strip().lower().replace("(", "").replace(")", "").replace(" ", "")
    if key in ("1,1", "11", "lorentzian"):
        return LORENTZIAN
    if key in ("0,2", "02", "riemannian", "euclidean"):
        return RIEMANNIAN
    raise ValueError(f"unknown signature {name!r}")


class Mat2:
    """Immutable 2x2 matrix over exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        r = tuple(tuple(frac(x) for x in row) for row in rows)
        if len(r) != 2 or any(len(row) != 2 for row in r):
            raise ValueError("Mat2 requires a 2x2 array")
        object.__setattr__(self, "rows", r)

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Mat2 is immutable")

    @staticmethod
    def identity() -> "Mat2":
        return Mat2([[1, 0], [0, 1]])

    @staticmethod
    def zero() -> "Mat2":
        return Mat2([[0, 0], [0, 0]])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat2":
        return Mat2([[-a for a in row] for row in self.rows])

    def __mul__(self, scalar) -> "Mat2":
        s = frac(scalar)
        return Mat2([[a * s for a in row] for row in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat2") -> "Mat2":
        a, b = self.rows, other.rows
        return Mat2(
            [
                [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
            ]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat2) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Mat2({[list(map(str, row)) for row in self.rows]})"

    def transpose(self) -> "Mat2":
        r = self.rows
        return Mat2([[r[0][0], r[1][0]], [r[0][1], r[1][1]]])

    def trace(self) -> Fraction:
        return self.rows[0][0] + self.rows[1][1]

    def det(self) -> Fraction:
        r = self.rows
        return r[0][0] * r[1][1] - r[0][1] * r[1][0]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def apply(self, v) -> tuple[Fraction, Fraction]:
        """Matrix-vector product on a length-2 sequence of rationals."""
        x, y = frac(v[0]), frac(v[1])
        r = self.rows
        return (r[0][0] * x + r[0][1] * y, r[1][0] * x + r[1][1] * y)

    def floats(self):
        return [[float(x) for x in row] for row in self.rows]


# The real 2x2 building blocks: sigma_1, sigma_3 and the symplectic Omega.
SIGMA1 = Mat2([[0, 1], [1, 0]])
SIGMA3 = Mat2([[1, 0], [0, -1]])
OMEGA = Mat2([[0, 1], [-1, 0]])
IDENTITY = Mat2.identity()


@dataclass(frozen=True)
class GammaRep:
    """Concrete gamma matrices plus the eps-symbol bookkeeping for one signature."""

    signature: Signature
    gamma: tuple[Mat2, Mat2]
    gamma_star: Mat2
    levi_civita_lower: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    levi_civita_upper: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    @property
    def eta(self):
        return self.signature.eta

    @property
    def varsigma(self) -> Fraction:
        return self.signature.varsigma

    def eps_lower(self, mu: int, nu: int) -> Fraction:
        return self.levi_civita_lower[mu][nu]

    def eps_upper(self, mu: int, nu: int) -> Fraction:
        return self.levi_civita_upper[mu][nu]

    def eps_mixed(self, mu: int, nu: int) -> Fraction:
        """eps_mu^nu, second index raised with eta."""
        return sum(self.levi_civita_lower[mu][s] * _eta_inv(self, s, nu) for s in range(2))

    def gamma_lower(self, mu: int) -> Mat2:
        return self.gamma[mu]

    def gamma_upper(self, mu: int) -> Mat2:
        # eta is diagonal, so raising is a sign flip at most
        return self.gamma[mu] * _eta_inv(self, mu, mu)

    def gamma_pair(self, mu: int, nu: int) -> Mat2:
        """Gamma_{mu nu} = eps_{mu nu} Gamma_*, computed on demand."""
        return self.gamma_star * self.levi_civita_lower[mu][nu]


def _eta_inv(rep: GammaRep, mu: int, nu: int) -> Fraction:
    if mu != nu:
        return _ZERO
    return _ONE / rep.eta[mu]


def build_gamma_rep(sig: Signature) -> GammaRep:
    """Construct the fixed matrix representation for the given signature."""
    if sig.kind is SignatureKind.LORENTZIAN_11:
        gamma = (OMEGA, SIGMA1)
        gamma_star = SIGMA3
        lower = ((_ZERO, _ONE), (-_ONE, _ZERO))
        upper = ((_ZERO, -_ONE), (_ONE, _ZERO))
    else:
        gamma = (SIGMA3, SIGMA1)
        gamma_star = OMEGA
        lower = ((_ZERO, _ONE), (-_ONE, _ZERO))
        upper = ((_ZERO, _ONE), (-_ONE, _ZERO))
    return GammaRep(sig, gamma, gamma_star, lower, upper)


@dataclass(frozen=True)
class CliffordElement:
    """Element over the basis {1, Gamma_mu, Gamma_*}: coefficients (c1, c_mu, c_star)."""

    c1: Fraction
    c_mu: tuple[Fraction, Fraction]
    c_star: Fraction

    @staticmethod
    def make(c1, c_mu, c_star) -> "CliffordElement":
        return CliffordElement(frac(c1), (frac(c_mu[0]), frac(c_mu[1])), frac(c_star))

    @staticmethod
    def one() -> "CliffordElement":
        return CliffordElement.make(1, (0, 0), 0)

    @staticmethod
    def zero() -> "CliffordElement":
        return CliffordElement.make(0, (0, 0), 0)

    @staticmethod
    def vector(mu: int) -> "CliffordElement":
        return CliffordElement.make(0, (1 - mu, mu), 0)

    @staticmethod
    def volume() -> "CliffordElement":
        return CliffordElement.make(0, (0, 0), 1)

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c1, self.c_mu[0], self.c_mu[1], self.c_star)


def element_to_matrix(rep: GammaRep, x: CliffordElement) -> Mat2:
    m = IDENTITY * x.c1 + rep.gamma[0] * x.c_mu[0] + rep.gamma[1] * x.c_mu[1]
    return m + rep.gamma_star * x.c_star


def element_from_matrix(rep: GammaRep, m: Mat2) -> CliffordElement:
    """Invert the basis map exactly via the Pauli decomposition of R(2).

    Any real 2x2 matrix is a unique combination a*1 + b*sigma_1 +
    c*Omega + d*sigma_3; the gamma basis of either signature is a
    relabelling of those four matrices.
    """
    r = m.rows
    a = (r[0][0] + r[1][1]) / 2
    b = (r[0][1] + r[1][0]) / 2
    c = (r[0][1] - r[1][0]) / 2
    d = (r[0][0] - r[1][1]) / 2
    if rep.signature.kind is SignatureKind.LORENTZIAN_11:
        return CliffordElement.make(a, (c, b), d)
    return CliffordElement.make(a, (d, b), c)


def clifford_product(rep: GammaRep, x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """Product in Cl(V), evaluated through the faithful matrix representation."""
    return element_from_matrix(rep, element_to_matrix(rep, x) @ element_to_matrix(rep, y))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def verify_gamma_identities(rep: GammaRep) -> IdentityReport:
    """Exhaustively check the algebraic relations the gamma matrices must satisfy."""
    vs = rep.varsigma
    eta = rep.eta
    checks: list[IdentityCheck] = []

    def add(name: str, ok: bool):
        checks.append(IdentityCheck(name, ok))

    # Clifford relation and the rank-2 reduction.
    for mu in range(2):
        for nu in range(2):
            anti = rep.gamma[mu] @ rep.gamma[nu] + rep.gamma[nu] @ rep.gamma[mu]
            expect = IDENTITY * (2 * (eta[mu] if mu == nu else _ZERO))
            add(f"anticommutator[{mu}{nu}]", anti == expect)
            prod = rep.gamma[mu] @ rep.gamma[nu]
            red = rep.gamma_star * rep.eps_lower(mu, nu) + IDENTITY * (eta[mu] if mu == nu else _ZERO)
            add(f"product_reduction[{mu}{nu}]", prod == red)

    # Gamma_mu Gamma_* = -Gamma_* Gamma_mu = varsigma eps_{mu nu} Gamma^nu.
    for mu in range(2):
        lhs = rep.gamma[mu] @ rep.gamma_star
        rhs = Mat2.zero()
        for nu in range(2):
            rhs = rhs + rep.gamma_upper(nu) * (vs * rep.eps_lower(mu, nu))
        add(f"gamma_volume_swap[{mu}]", lhs == rhs and lhs == -(rep.gamma_star @ rep.gamma[mu]))

    add("volume_square", rep.gamma_star @ rep.gamma_star == IDENTITY * (-vs))

    # Raised volume element: Gamma^* = eps^{01} Gamma_* must equal varsigma Gamma_*.
    add("raised_volume", rep.gamma_star * rep.eps_upper(0, 1) == rep.gamma_star * vs)

    # Gamma^{mu nu} = eps^{mu nu} Gamma_*: raise both indices of Gamma_{mu nu}.
    ok = True
    for mu in range(2):
        for nu in range(2):
            raised = rep.gamma_pair(mu, nu) * (_eta_inv(rep, mu, mu) * _eta_inv(rep, nu, nu))
            ok = ok and raised == rep.gamma_star * rep.eps_upper(mu, nu)
    add("raised_pair", ok)

    # eps contraction identities.
    ok = True
    for mu in range(2):
        for nu in range(2):
            for rho in range(2):
                for sg in range(2):
                    lhs = rep.eps_lower(mu, nu) * rep.eps_lower(rho, sg)
                    emr = eta[mu] if mu == rho else _ZERO
                    ens = eta[nu] if nu == sg else _ZERO
                    ems = eta[mu] if mu == sg else _ZERO
                    enr = eta[nu] if nu == rho else _ZERO
                    ok = ok and lhs == vs * (emr * ens - ems * enr)
    add("eps_product", ok)

    ok = True
    for mu in range(2):
        for rho in range(2):
            contr = sum(rep.eps_lower(mu, nu) * rep.eps_mixed(rho, nu) for nu in range(2))
            ok = ok and contr == vs * (eta[mu] if mu == rho else _ZERO)
    add("eps_trace", ok)

    total = sum(rep.eps_lower(mu, nu) * rep.eps_upper(mu, nu) for mu in range(2) for nu in range(2))
    add("eps_full_contraction", total == 2 * vs)

    # Trace-style contractions of gamma products.
    acc = Mat2.zero()
    for mu in range(2):
        acc = acc + rep.gamma_upper(mu) @ rep.gamma[mu]
    add("gamma_contraction", acc == IDENTITY * 2)

    ok = True
    for nu in range(2):
        acc = Mat2.zero()
        for mu in range(2):
            acc = acc + rep.gamma_upper(mu) @ rep.gamma[nu] @ rep.gamma[mu]
        ok = ok and acc.is_zero()
    add("gamma_sandwich_vector", ok)

    acc = Mat2.zero()
    for mu in range(2):
        acc = acc + rep.gamma_upper(mu) @ rep.gamma_star @ rep.gamma[mu]
    add("gamma_sandwich_volume", acc == rep.gamma_star * (-2))

    return IdentityReport(tuple(checks))
