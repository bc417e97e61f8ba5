"""Exact-arithmetic engine and numeric workbench for 2D spinor geometry:
admissible bilinears and Dirac currents, degree-(2,2) cohomology of the
flat model superalgebras, their filtered deformations, and Killing
superalgebras realised on the maximally symmetric model surfaces.
"""

from .clifford import (
    LORENTZIAN,
    RIEMANNIAN,
    CliffordElement,
    GammaRep,
    Mat2,
    Signature,
    SignatureKind,
    build_gamma_rep,
    clifford_product,
    signature_from_name,
    verify_gamma_identities,
)
from .bilinears import (
    AdmissibilityReport,
    BilinearForm,
    CausalClass,
    DiracCurrent,
    NotAdmissible,
    Spinor,
    ZeroBilinear,
    admissible_form,
    causal_character,
    classify_bilinear,
    dirac_current,
    enumerate_admissible,
    fierz_decompose,
)
from .superalgebra import (
    ChiralDeformation,
    ChiralInRiemannian,
    GeometryLabel,
    JacobiReport,
    ModuleChoice,
    StructureConstants,
    build_deformation,
    build_flat_model,
    classify_even_part,
    super_jacobi_check,
)
from .spencer import (
    CohomologyResult,
    SpencerParams,
    assemble_cocycle_system,
    canonical_cocycle,
    solve_H22,
)
from .integrability import (
    IntegrabilityReport,
    NoFactorisation,
    NotACocycle,
    ThetaTensor,
    check_integrability,
    compute_theta,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
