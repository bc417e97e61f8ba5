"""Closed-form charts for the four model surfaces, with numeric validation.

Each geometry carries a coordinate chart, metric, Christoffel symbols,
an orthonormal frame, the single independent spin-connection component
and a basis of three Killing vector fields, all as hardcoded closed
forms. A finite-difference curvature oracle cross-checks the chart data,
so transcription errors cannot survive the test suite.

Charts:
* flat: Cartesian plane, metric diag(+-1, 1).
* hyperbolic plane H2: upper half-plane, ds^2 = (dx^2 + dy^2)/(2by)^2,
  scalar curvature -8b^2.
* de Sitter dS2 / anti-de Sitter AdS2: static chart (t, r) with
  ds^2 = -f dt^2 + dr^2/f, f = 1 -+ 4b^2 r^2, scalar curvature = -f''
  giving +8b^2 and -8b^2 respectively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..clifford import GammaRep, LORENTZIAN, RIEMANNIAN, Signature, SignatureKind, build_gamma_rep
from ..superalgebra import GeometryLabel

Point = tuple[float, float]


class OutOfChart(ValueError):
    """Point lies outside the coordinate domain of the chart."""


class ZeroCurvatureScale(ValueError):
    """Curved model spaces need a nonzero curvature scale b."""


class IncompatibleSignature(ValueError):
    """Requested model space does not exist in that signature."""


@dataclass(frozen=True)
class ModelGeometry:
    kind: GeometryLabel
    signature: Signature
    rep: GammaRep
    chart: str
    b_scale: float
    metric_eval: Callable[[Point], np.ndarray]
    christoffel_eval: Callable[[Point], np.ndarray]  # [k][i][j] upper-lower-lower
    frame_eval: Callable[[Point], np.ndarray]  # e_a^i, rows are frame vectors
    coframe_eval: Callable[[Point], np.ndarray]  # theta^a_i
    spin_connection_eval: Callable[[Point], np.ndarray]  # omega_{i,(01|12)} per i
    scalar_curvature_target: float
    killing_fields: tuple[Callable[[Point], np.ndarray], ...]
    domain: Callable[[Point], bool]
    base_point: Point
    sample_box: tuple[tuple[float, float], tuple[float, float]] = field(
        default=((-0.4, 0.4), (-0.4, 0.4))
    )

    def ensure_inside(self, p: Point):
        if not self.domain(p):
            raise OutOfChart(f"point {p} outside chart {self.chart!r}")

    def metric(self, p: Point) -> np.ndarray:
        self.ensure_inside(p)
        return self.metric_eval(p)

    def christoffel(self, p: Point) -> np.ndarray:
        self.ensure_inside(p)
        return self.christoffel_eval(p)

    def frame(self, p: Point) -> np.ndarray:
        self.ensure_inside(p)
        return self.frame_eval(p)

    def coframe(self, p: Point) -> np.ndarray:
        self.ensure_inside(p)
        return self.coframe_eval(p)

    def spin_connection(self, p: Point) -> np.ndarray:
        self.ensure_inside(p)
        return self.spin_connection_eval(p)

    def eta_diag(self) -> np.ndarray:
        return np.array([float(x) for x in self.signature.eta])

    def sample_points(self, n_per_axis: int = 4) -> list[Point]:
        (x0, x1), (y0, y1) = self.sample_box
        xs = np.linspace(x0, x1, n_per_axis)
        ys = np.linspace(y0, y1, n_per_axis)
        return [(float(x), float(y)) for x in xs for y in ys]


def _conformal_chart(phi, phi_x, phi_y):
    """Chart data for a definite-signature metric e^{2 phi} (dx^2 + dy^2)."""

    def metric(p):
        s = math.exp(2 * phi(p))
        return np.array([[s, 0.0], [0.0, s]])

    def christoffel(p):
        px, py = phi_x(p), phi_y(p)
        g = np.zeros((2, 2, 2))
        g[0, 0, 0] = px
        g[0, 0, 1] = g[0, 1, 0] = py
        g[0, 1, 1] = -px
        g[1, 0, 0] = -py
        g[1, 0, 1] = g[1, 1, 0] = px
        g[1, 1, 1] = py
        return g

    def frame(p):
        s = math.exp(-phi(p))
        return np.array([[s, 0.0], [0.0, s]])

    def coframe(p):
        s = math.exp(phi(p))
        return np.array([[s, 0.0], [0.0, s]])

    def spin_connection(p):
        # omega_{12} = phi_y dx - phi_x dy
        return np.array([phi_y(p), -phi_x(p)])

    return metric, christoffel, frame, coframe, spin_connection


def _static_chart(f, fprime):
    """Chart data for a Lorentzian metric -f(r) dt^2 + dr^2/f(r)."""

    def metric(p):
        v = f(p[1])
        return np.array([[-v, 0.0], [0.0, 1.0 / v]])

    def christoffel(p):
        v, dv = f(p[1]), fprime(p[1])
        g = np.zeros((2, 2, 2))
        g[0, 0, 1] = g[0, 1, 0] = dv / (2 * v)
        g[1, 0, 0] = v * dv / 2
        g[1, 1, 1] = -dv / (2 * v)
        return g

    def frame(p):
        v = f(p[1])
        return np.array([[1.0 / math.sqrt(v), 0.0], [0.0, math.sqrt(v)]])

    def coframe(p):
        v = f(p[1])
        return np.array([[math.sqrt(v), 0.0], [0.0, 1.0 / math.sqrt(v)]])

    def spin_connection(p):
        # omega_{01} = -(f'/2) dt
        return np.array([-fprime(p[1]) / 2, 0.0])

    return metric, christoffel, frame, coframe, spin_connection


def flat_space(signature: Signature) -> ModelGeometry:
    rep = build_gamma_rep(signature)
    eta = np.array([float(x) for x in signature.eta])

    def metric(p):
        return np.diag(eta)

    zero2 = np.zeros((2, 2, 2))
    identity = np.eye(2)

    def const(arr):
        return lambda p: arr

    if signature.kind is SignatureKind.LORENTZIAN_11:
        fields = (
            lambda p: np.array([1.0, 0.0]),
            lambda p: np.array([0.0, 1.0]),
            lambda p: np.array([p[1], p[0]]),  # boost
        )
    else:
        fields = (
            lambda p: np.array([1.0, 0.0]),
            lambda p: np.array([0.0, 1.0]),
            lambda p: np.array([-p[1], p[0]]),  # rotation
        )
    return ModelGeometry(
        kind=GeometryLabel.FLAT,
        signature=signature,
        rep=rep,
        chart="cartesian",
        b_scale=0.0,
        metric_eval=metric,
        christoffel_eval=const(zero2),
        frame_eval=const(identity),
        coframe_eval=const(identity),
        spin_connection_eval=const(np.zeros(2)),
        scalar_curvature_target=0.0,
        killing_fields=fields,
        domain=lambda p: True,
        base_point=(0.0, 0.0),
        sample_box=((-0.5, 0.5), (-0.5, 0.5)),
    )


def hyperbolic_plane(b: float) -> ModelGeometry:
    """Upper half-plane with R = -8b^2, conformal factor 1/(2|b|y)."""
    if b == 0:
        raise ZeroCurvatureScale("hyperbolic plane needs b != 0")
    scale = 2 * abs(b)

    def phi(p):
        if p[1] <= 0:
            raise OutOfChart("upper half-plane requires y > 0")
        return -math.log(scale * p[1])

    charts = _conformal_chart(phi, lambda p: 0.0, lambda p: -1.0 / p[1])
    fields = (
        lambda p: np.array([1.0, 0.0]),
        lambda p: np.array([p[0], p[1]]),
        lambda p: np.array([p[0] ** 2 - p[1] ** 2, 2 * p[0] * p[1]]),
    )
    return ModelGeometry(
        kind=GeometryLabel.H2,
        signature=RIEMANNIAN,
        rep=build_gamma_rep(RIEMANNIAN),
        chart="upper half-plane",
        b_scale=float(b),
        metric_eval=charts[0],
        christoffel_eval=charts[1],
        frame_eval=charts[2],
        coframe_eval=charts[3],
        spin_connection_eval=charts[4],
        scalar_curvature_target=-8 * b * b,
        killing_fields=fields,
        domain=lambda p: p[1] > 1e-9,
        base_point=(0.0, 1.0),
        sample_box=((-0.4, 0.4), (0.7, 1.5)),
    )


def perturbed_hyperbolic(b: float, amplitude: float = 0.2) -> ModelGeometry:
    """Negative-control fixture: H2 conformal factor warped by exp(a x^2 / 2).

    The scalar curvature is no longer constant, so the connection below
    stops being flat and the space of parallel spinors collapses.
    """
    if b == 0:
        raise ZeroCurvatureScale("needs b != 0")
    scale = 2 * abs(b)
    a = amplitude

    def phi(p):
        if p[1] <= 0:
            raise OutOfChart("upper half-plane requires y > 0")
        return -math.log(scale * p[1]) + a * p[0] ** 2 / 2

    charts = _conformal_chart(phi, lambda p: a * p[0], lambda p: -1.0 / p[1])
    base = hyperbolic_plane(b)
    return ModelGeometry(
        kind=GeometryLabel.H2,
        signature=RIEMANNIAN,
        rep=base.rep,
        chart="perturbed upper half-plane",
        b_scale=float(b),
        metric_eval=charts[0],
        christoffel_eval=charts[1],
        frame_eval=charts[2],
        coframe_eval=charts[3],
        spin_connection_eval=charts[4],
        scalar_curvature_target=math.nan,
        killing_fields=(),
        domain=lambda p: p[1] > 1e-9,
        base_point=(0.0, 1.0),
        sample_box=((-0.4, 0.4), (0.7, 1.5)),
    )


def de_sitter(b: float) -> ModelGeometry:
    """Static chart of dS2 with R = +8b^2; domain |r| < 1/(2|b|)."""
    if b == 0:
        raise ZeroCurvatureScale("de Sitter space needs b != 0")
    h = 2 * abs(b)
    r_max = 1.0 / h

    def f(r):
        return 1.0 - (h * r) ** 2

    charts = _static_chart(f, lambda r: -2 * h * h * r)

    def k_plus(p):
        t, r = p
        sq = math.sqrt(f(r))
        return np.array([math.exp(h * t) * h * r / sq, math.exp(h * t) * sq])

    def k_minus(p):
        t, r = p
        sq = math.sqrt(f(r))
        return np.array([-math.exp(-h * t) * h * r / sq, math.exp(-h * t) * sq])

    fields = (lambda p: np.array([1.0, 0.0]), k_plus, k_minus)
    return ModelGeometry(
        kind=GeometryLabel.DS2,
        signature=LORENTZIAN,
        rep=build_gamma_rep(LORENTZIAN),
        chart="static",
        b_scale=float(b),
        metric_eval=charts[0],
        christoffel_eval=charts[1],
        frame_eval=charts[2],
        coframe_eval=charts[3],
        spin_connection_eval=charts[4],
        scalar_curvature_target=8 * b * b,
        killing_fields=fields,
        domain=lambda p: abs(p[1]) < r_max * (1 - 1e-9),
        base_point=(0.0, 0.0),
        sample_box=((-0.4, 0.4), (-0.55 * r_max, 0.55 * r_max)),
    )


def anti_de_sitter(b: float) -> ModelGeometry:
    """Static chart of AdS2 with R = -8b^2."""
    if b == 0:
        raise ZeroCurvatureScale("anti-de Sitter space needs b != 0")
    h = 2 * abs(b)

    def f(r):
        return 1.0 + (h * r) ** 2

    charts = _static_chart(f, lambda r: 2 * h * h * r)

    def k_cos(p):
        t, r = p
        sq = math.sqrt(f(r))
        return np.array([-h * math.sin(h * t) * r / sq, math.cos(h * t) * sq])

    def k_sin(p):
        t, r = p
        sq = math.sqrt(f(r))
        return np.array([h * math.cos(h * t) * r / sq, math.sin(h * t) * sq])

    fields = (lambda p: np.array([1.0, 0.0]), k_cos, k_sin)
    return ModelGeometry(
        kind=GeometryLabel.ADS2,
        signature=LORENTZIAN,
        rep=build_gamma_rep(LORENTZIAN),
        chart="static",
        b_scale=float(b),
        metric_eval=charts[0],
        christoffel_eval=charts[1],
        frame_eval=charts[2],
        coframe_eval=charts[3],
        spin_connection_eval=charts[4],
        scalar_curvature_target=-8 * b * b,
        killing_fields=fields,
        domain=lambda p: True,
        base_point=(0.0, 0.0),
        sample_box=((-0.5, 0.5), (-0.5, 0.5)),
    )


def model_space(kind: GeometryLabel, b: float = 0.0, signature: Signature | None = None) -> ModelGeometry:
    """Dispatch on the model-space label; signature only disambiguates Flat."""
    if kind is GeometryLabel.FLAT:
        return flat_space(signature if signature is not None else RIEMANNIAN)
    if kind is GeometryLabel.H2:
        if signature is not None and signature.kind is not SignatureKind.RIEMANNIAN_02:
            raise IncompatibleSignature("H2 is a definite-signature geometry")
        return hyperbolic_plane(b)
    if kind is GeometryLabel.DS2:
        if signature is not None and signature.kind is not SignatureKind.LORENTZIAN_11:
            raise IncompatibleSignature("dS2 is Lorentzian")
        return de_sitter(b)
    if kind is GeometryLabel.ADS2:
        if signature is not None and signature.kind is not SignatureKind.LORENTZIAN_11:
            raise IncompatibleSignature("AdS2 is Lorentzian")
        return anti_de_sitter(b)
    raise ValueError(f"unknown geometry kind {kind}")


def _d1(fn, p: Point, axis: int, h: float = 1e-4):
    """Second-order central difference along one coordinate."""
    dp = [0.0, 0.0]
    dp[axis] = h
    plus = fn((p[0] + dp[0], p[1] + dp[1]))
    minus = fn((p[0] - dp[0], p[1] - dp[1]))
    return (np.asarray(plus) - np.asarray(minus)) / (2 * h)


def d1_rich(fn, p: Point, axis: int, h: float = 1e-3):
    """Fourth-order central difference (Richardson-extrapolated)."""
    dp = [0.0, 0.0]
    dp[axis] = h

    def at(k):
        return np.asarray(fn((p[0] + k * dp[0], p[1] + k * dp[1])))

    return (8 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12 * h)


def _riemann_scalar(geom_metric, christoffel_fn, p: Point, deriv) -> float:
    """Scalar curvature from a Christoffel field, derivatives by differences."""
    gamma = np.asarray(christoffel_fn(p))
    dgamma = np.stack([deriv(christoffel_fn, p, i) for i in range(2)])  # [i][k][j][l]
    riem = np.zeros((2, 2, 2, 2))  # R^k_{l i j}
    for k in range(2):
        for l in range(2):
            for i in range(2):
                for j in range(2):
                    val = dgamma[i][k][j][l] - dgamma[j][k][i][l]
                    for m in range(2):
                        val += gamma[k][i][m] * gamma[m][j][l] - gamma[k][j][m] * gamma[m][i][l]
                    riem[k][l][i][j] = val
    ricci = np.einsum("klkj->lj", riem)
    g_inv = np.linalg.inv(np.asarray(geom_metric(p)))
    return float(np.einsum("lj,lj->", g_inv, ricci))


def scalar_curvature(geom: ModelGeometry, p: Point, fd_step: float = 1e-4) -> float:
    """Scalar curvature at p from the closed-form Christoffels.

    A second, fully finite-difference route (Christoffels rebuilt from
    differences of the metric) must agree within 1e-6; disagreement
    means the chart data is internally inconsistent.
    """
    geom.ensure_inside(p)
    closed = _riemann_scalar(
        geom.metric_eval, geom.christoffel_eval, p, lambda fn, q, ax: d1_rich(fn, q, ax)
    )

    def fd_route(h):
        def fd_christoffel(q):
            g = np.asarray(geom.metric_eval(q))
            g_inv = np.linalg.inv(g)
            dg = np.stack([_d1(geom.metric_eval, q, i, h) for i in range(2)])
            gamma = np.zeros((2, 2, 2))
            for k in range(2):
                for i in range(2):
                    for j in range(2):
                        gamma[k][i][j] = 0.5 * sum(
                            g_inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
                            for l in range(2)
                        )
            return gamma

        return _riemann_scalar(
            geom.metric_eval, fd_christoffel, p, lambda fn, q, ax: _d1(fn, q, ax, h)
        )

    # one Richardson level on the second-order metric-difference route
    numeric = (4 * fd_route(fd_step / 2) - fd_route(fd_step)) / 3
    if abs(closed - numeric) > 1e-6 * max(1.0, abs(closed)):
        raise AssertionError(
            f"curvature routes disagree at {p}: closed {closed}, finite-difference {numeric}"
        )
    return closed


def hodge_star_frame(rep: GammaRep, x_frame: np.ndarray) -> np.ndarray:
    """Hodge dual on raised orthonormal-frame components: (*X)^s = X^m eps_m^s."""
    out = np.zeros(2)
    for mu in range(2):
        for sig in range(2):
            out[sig] += x_frame[mu] * float(rep.eps_lower(mu, sig)) / float(rep.eta[sig])
    return out


def killing_residual(geom: ModelGeometry, field, p: Point, h: float = 1e-5) -> float:
    """Max component of the Killing equation grad_i X_j + grad_j X_i at p."""
    geom.ensure_inside(p)
    g = geom.metric(p)
    gamma = geom.christoffel(p)
    dX = np.stack([_d1(field, p, i, h) for i in range(2)])  # [j][i] = d_j X^i
    x = np.asarray(field(p))
    nabla = np.zeros((2, 2))  # (grad X)^i_j
    for i in range(2):
        for j in range(2):
            nabla[i][j] = dX[j][i] + sum(gamma[i][j][k] * x[k] for k in range(2))
    lowered = g @ nabla  # (grad X)_{ij}
    return float(np.abs(lowered + lowered.T).max())
