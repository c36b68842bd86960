"""High-order central-difference stencils for the Riesz fractional derivative."""

from .errors import ConvergenceError, InstabilityError, RieszStencilError, SymmetryError, ValidationError
from .experiments import (
    ErrorTable,
    RefinementSchedule,
    emit_spectrum,
    run_cosine_experiment,
    run_experiment,
    run_poly_experiment,
)
from .filters import Filter, FilterSpec, PositivityWarning, build_filter, build_filter_direct
from .reference import (
    CosineCase,
    PolynomialCase,
    cosine_riesz_exact,
    poly_riesz_exact,
    riesz_quadrature_oracle,
)
from .spectral import (
    eigen_bound_estimate,
    positivity_check,
    rate_curve,
    relative_response,
    response_curve,
    spectral_rate,
)
from .stencil import (
    GridSpec,
    ResumeState,
    Stencil,
    apply_operator,
    build_stencil,
    extend_stencil,
    operator_matrix,
    start_adaptive,
)

__all__ = [name for name in dir() if not name.startswith("_")]
