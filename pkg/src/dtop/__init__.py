"""Toeplitz operators on the Dirichlet space D0.

Truncated matrices, exact coefficient actions, the Brown-Halmos identity
``T_zbar A T_z = A``, symbol recovery, and numerical checks of the product,
commutation, compactness, Berezin and Carleson results.
"""

from ._jit import BACKEND
from .analysis import (
    CarlesonEstimate,
    DiskQuadrature,
    berezin_closed_form,
    berezin_form,
    bergman_berezin,
    bloch_decay,
    carleson_lower_bound,
    compact_product_decay,
    make_quadrature,
)
from .errors import (
    BoundViolationError,
    ConvergenceError,
    DtopError,
    NotToeplitzError,
    QuadratureError,
    SymbolFormatError,
)
from .kernels import (
    AnalyticVector,
    e_vector,
    eval_bergman_kernel,
    eval_dirichlet_kernel,
    kernel_derivative_identity_residual,
    project_monomial,
)
from .operator import (
    ToeplitzOracle,
    TruncatedOperator,
    adjoint,
    apply,
    brown_halmos_residual,
    commute_check,
    compactness_witness,
    homogeneous_part,
    operator_norm,
    product_is_toeplitz,
    rank_one_defect,
    recover_symbol,
    toeplitz_matrix,
)
from .symbols import (
    HarmonicSymbol,
    boundary_product,
    cesaro,
    decompose,
    is_antiholomorphic,
    is_holomorphic,
    sup_norm,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticVector",
    "BACKEND",
    "BoundViolationError",
    "CarlesonEstimate",
    "ConvergenceError",
    "DiskQuadrature",
    "DtopError",
    "HarmonicSymbol",
    "NotToeplitzError",
    "QuadratureError",
    "SymbolFormatError",
    "ToeplitzOracle",
    "TruncatedOperator",
    "adjoint",
    "apply",
    "berezin_closed_form",
    "berezin_form",
    "bergman_berezin",
    "bloch_decay",
    "boundary_product",
    "brown_halmos_residual",
    "carleson_lower_bound",
    "cesaro",
    "commute_check",
    "compact_product_decay",
    "compactness_witness",
    "decompose",
    "e_vector",
    "eval_bergman_kernel",
    "eval_dirichlet_kernel",
    "homogeneous_part",
    "is_antiholomorphic",
    "is_holomorphic",
    "kernel_derivative_identity_residual",
    "make_quadrature",
    "operator_norm",
    "product_is_toeplitz",
    "project_monomial",
    "rank_one_defect",
    "recover_symbol",
    "sup_norm",
    "toeplitz_matrix",
    "__version__",
]
