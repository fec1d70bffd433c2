"""Top level API.

Exact L2 constants of linear Fourier summation methods on classes of
(psi, beta)-differentiable periodic functions, the methods themselves, best
approximation of the generating kernel and independent numerical oracles.

.. data:: __version__
    :type: str

    Version number as calculated by https://github.com/pypa/setuptools_scm
"""

from ._version import __version__
from .best_approx import (
    BestApproximation,
    BestApproxOptions,
    best_linear_error,
    best_method,
    best_trig_poly,
    method_from_poly,
    poly_from_method,
)
from .bounds import (
    error_fourier,
    error_fourier_geometric,
    error_scheme,
    error_triangular,
    error_vdp,
    error_vdp_geometric,
    vdp_geometric_lhs_rhs,
)
from .core import (
    ConstantBeta,
    ExplicitBeta,
    ExplicitPsi,
    GeometricPsi,
    GeometricTail,
    LinearBeta,
    MultiplierScheme,
    ParameterSet,
    PowerLawPsi,
    PsiBetaError,
    TriangularMethod,
    TrigPolynomial,
    ZeroTail,
    fejer_method,
    fourier_method,
    frozen_scheme,
    psi_eval,
    psi_tail_sq_sum,
    scheme_from_family,
    triangular_validate,
    validate_square_summable,
    vdp_method,
)
from .kernels import (
    KernelSpec,
    difference_kernel,
    kernel_eval,
    kernel_partial_sum,
)
from .operators import (
    apply_scheme,
    apply_triangular,
    convolve,
    psi_beta_derivative,
    synthesize_class_function,
)

__all__ = [
    "__version__",
    "BestApproxOptions",
    "BestApproximation",
    "ConstantBeta",
    "ExplicitBeta",
    "ExplicitPsi",
    "GeometricPsi",
    "GeometricTail",
    "KernelSpec",
    "LinearBeta",
    "MultiplierScheme",
    "ParameterSet",
    "PowerLawPsi",
    "PsiBetaError",
    "TriangularMethod",
    "TrigPolynomial",
    "ZeroTail",
    "apply_scheme",
    "apply_triangular",
    "best_linear_error",
    "best_method",
    "best_trig_poly",
    "convolve",
    "difference_kernel",
    "error_fourier",
    "error_fourier_geometric",
    "error_scheme",
    "error_triangular",
    "error_vdp",
    "error_vdp_geometric",
    "fejer_method",
    "fourier_method",
    "frozen_scheme",
    "kernel_eval",
    "kernel_partial_sum",
    "method_from_poly",
    "poly_from_method",
    "psi_beta_derivative",
    "psi_eval",
    "psi_tail_sq_sum",
    "scheme_from_family",
    "synthesize_class_function",
    "triangular_validate",
    "validate_square_summable",
    "vdp_geometric_lhs_rhs",
    "vdp_method",
]
