"""Numerics for a two-variable Selberg zeta function.

Special functions (binomial Hurwitz zeta, two-variable gamma, multiple
sine), hyperbolic length-spectrum enumeration, truncated Euler products,
spectral regularized determinants, and verifiers for the trace-formula
and reflection identities that tie them together.
"""

from .binom_zeta import (
    continuation_poles,
    continuation_rep,
    gamma2,
    log_gamma2,
    log_multisine,
    multisine,
    zeta_t,
    zeta_t_cont,
    zeta_t_int,
    zeta_t_int_zderiv,
    zeta_t_series,
)
from .completion import (
    CompletionPolynomial,
    det_expression_residual,
    fe_deriv_residual,
    fit_completion_polynomial,
    lemfe_residual,
    log_Z_hat,
    p0_from_limit,
    p_poly_from_shift,
    p_recursion_readings,
    zhat_reflection_residual,
)
from .core import SeriesControl, gen_binom, hurwitz_zeta, hurwitz_zeta_zderiv
from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    SelzetError,
    SpectrumFormatError,
)
from .products import (
    TruncationPolicy,
    ZetaPoint,
    ladder_residual,
    log_Z2,
    log_Z_classic,
    log_Z_rank,
    log_ruelle,
    logderiv_Z2,
    with_powers,
)
from .spectral import (
    fhat,
    fhat_m,
    identity_term_quad,
    identity_term_series,
    log_det_gamma_spec,
    log_det_laplacian,
    log_det_sine_spec,
    r_from_lambda,
    shift3_residuals,
    trace_report,
    trace_residual,
)
from .spectrum import (
    EigenEntry,
    EigenSpectrum,
    GeodesicEntry,
    GroupPresentation,
    LengthSpectrum,
    class_norm,
    enumerate_classes,
    load_eigen,
    load_spectrum,
    make_entry,
    save_eigen,
    save_spectrum,
)
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "CompletionPolynomial",
    "ConvergenceError",
    "DomainError",
    "EigenEntry",
    "EigenSpectrum",
    "GeodesicEntry",
    "GroupPresentation",
    "LengthSpectrum",
    "PoleError",
    "SelzetError",
    "SeriesControl",
    "SpectrumFormatError",
    "TruncationPolicy",
    "ZetaPoint",
    "class_norm",
    "continuation_poles",
    "continuation_rep",
    "det_expression_residual",
    "enumerate_classes",
    "fe_deriv_residual",
    "fhat",
    "fhat_m",
    "fit_completion_polynomial",
    "gamma2",
    "gen_binom",
    "hurwitz_zeta",
    "hurwitz_zeta_zderiv",
    "identity_term_quad",
    "identity_term_series",
    "ladder_residual",
    "lemfe_residual",
    "load_eigen",
    "load_spectrum",
    "log_Z2",
    "log_Z_classic",
    "log_Z_hat",
    "log_Z_rank",
    "log_det_gamma_spec",
    "log_det_laplacian",
    "log_det_sine_spec",
    "log_gamma2",
    "log_multisine",
    "log_ruelle",
    "logderiv_Z2",
    "make_entry",
    "multisine",
    "p0_from_limit",
    "p_poly_from_shift",
    "p_recursion_readings",
    "r_from_lambda",
    "run_suite",
    "save_eigen",
    "save_spectrum",
    "shift3_residuals",
    "trace_report",
    "trace_residual",
    "with_powers",
    "zeta_t",
    "zeta_t_cont",
    "zeta_t_int",
    "zeta_t_int_zderiv",
    "zeta_t_series",
    "zhat_reflection_residual",
]
