"""Numeric realisation of Killing spinor geometry on the 2D model spaces."""

from .models import (
    IncompatibleSignature,
    ModelGeometry,
    OutOfChart,
    ZeroCurvatureScale,
    anti_de_sitter,
    de_sitter,
    flat_space,
    hodge_star_frame,
    hyperbolic_plane,
    killing_residual,
    model_space,
    perturbed_hyperbolic,
    scalar_curvature,
)
from .connection import (
    AdmissibleConnection,
    BasisDegenerate,
    CurvatureReport,
    Curve,
    KillingSpinorField,
    NonFiniteState,
    NotMaxSusy,
    SpinorFieldSample,
    curvature_rd,
    dirac_operator,
    killing_spinor_dimension,
    killing_spinor_field,
    laplace_operator,
    lichnerowicz_residual,
    line_segment,
    parallel_transport,
    scalar_curvature_constraint,
    square_loop,
)
from .killing import (
    KillingSuperalgebraReport,
    assemble_killing_superalgebra,
    kosmann_lie_derivative,
    lie_bracket,
)

__all__ = [name for name in dir() if not name.startswith("_")]
