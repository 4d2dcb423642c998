"""Sharp constants in real-part estimates for derivatives of analytic functions."""

from .constants import (
    AdmissibilityError,
    BoundsPair,
    ConstantQuery,
    ConstantResult,
    ExponentP,
    bounds_even,
    check_admissible,
    closed_form_lookup,
    consistency_report,
    dk_dalpha,
    k_alpha,
    k_profile,
    k_sharp,
    lambda_m,
    theorem1_value,
)
from .qkernel import QSpec, RegimeError, q_closed, q_maximize, q_numeric
from .quadrature import QuadratureConfig, QuadratureError, QuadratureResult, integrate_panels
from .sharpness import (
    BoundaryDensity,
    HalfPlanePoint,
    TrigPolynomial,
    disk_constant,
    disk_verify,
    extremal_density,
    schwarz_derivative,
    sharpness_ratio,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
