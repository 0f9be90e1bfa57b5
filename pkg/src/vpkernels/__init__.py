"""De la Vallee Poussin summability kernels and their exact L1 norms.

The norm of V(rN, sN) is independent of the family index N; this package
computes it three independent ways (closed form from derivative-sign DFTs,
piecewise-exact integration between enumerated zeros, adaptive quadrature)
and cross-verifies them, alongside a Fourier summation engine for partial
sums, Fejer means, and delayed means.  A FastAPI service wraps the library;
the bundled CLI is a thin client of that service.
"""

from .exactnorm import (
    Antiderivative,
    DecayReport,
    ImaginaryResidualError,
    NormReport,
    SignSequences,
    ZeroEntry,
    ZeroSet,
    area_split,
    decay_bound_check,
    derivative_sign_at_zero,
    enumerate_zeros,
    norm_closed_form,
    norm_piecewise_exact,
    sign_of_sin_two_pi,
    sign_sequences,
)
from .kernels import (
    CoefficientProfile,
    KernelParamError,
    KernelParams,
    coefficient,
    eval_dirichlet,
    eval_fejer,
    eval_vp,
    eval_vp_fejer_combination,
    make_params,
    trapezoid_weight,
)
from .quadrature import (
    QuadratureBudgetError,
    QuadratureSpec,
    integrate_abs_kernel,
    integrate_kernel,
    integrate_kernel_positive_part,
    lebesgue_constant,
    norm_quadrature,
)
from .summation import (
    CATALOG,
    FourierFunction,
    TailMassReport,
    approximate_identity_report,
    catalog_function,
    delayed_mean,
    delayed_mean_from_fejer,
    fejer_mean,
    fejer_mean_from_partial_sums,
    partial_sum,
)
from .verify import BudgetGuardError, VerifyReport, coprime_pairs, verify_sweep

__version__ = "0.1.0"

__all__ = [
    "Antiderivative",
    "BudgetGuardError",
    "CATALOG",
    "CoefficientProfile",
    "DecayReport",
    "FourierFunction",
    "ImaginaryResidualError",
    "KernelParamError",
    "KernelParams",
    "NormReport",
    "QuadratureBudgetError",
    "QuadratureSpec",
    "SignSequences",
    "TailMassReport",
    "VerifyReport",
    "ZeroEntry",
    "ZeroSet",
    "approximate_identity_report",
    "area_split",
    "catalog_function",
    "coefficient",
    "coprime_pairs",
    "decay_bound_check",
    "delayed_mean",
    "delayed_mean_from_fejer",
    "derivative_sign_at_zero",
    "enumerate_zeros",
    "eval_dirichlet",
    "eval_fejer",
    "eval_vp",
    "eval_vp_fejer_combination",
    "fejer_mean",
    "fejer_mean_from_partial_sums",
    "integrate_abs_kernel",
    "integrate_kernel",
    "integrate_kernel_positive_part",
    "lebesgue_constant",
    "make_params",
    "norm_closed_form",
    "norm_piecewise_exact",
    "norm_quadrature",
    "partial_sum",
    "sign_of_sin_two_pi",
    "sign_sequences",
    "trapezoid_weight",
    "verify_sweep",
    "__version__",
]
