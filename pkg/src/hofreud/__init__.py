"""High-precision numerics for generalised higher-order Freud weights.

The weight |x|^(2*lam+1) exp(t*x^2 - x^(2m)) on the real line, its moments
and Hankel determinants, the recurrence coefficients and their discrete
Painleve-I string equations, the orthogonal polynomials with their
structure relations and differential equation, zeros with interlacing and
asymptotic density, and an independent tanh-sinh quadrature oracle that
cross-checks all of it.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DivergenceError,
    FreudError,
    InsufficientDataError,
    ParameterError,
    PoleError,
    PrecisionExhaustedError,
    RangeError,
)
from .moments import MomentTable, WeightParams, moment, moment_ode_residual, moment_table, mu0, weight_eval
from .hankel import RecurrenceTable, beta_from_hankel, hankel_det, parity_dets, recurrence_table
from .oracle import QuadratureSpec, inner_product, integrate_halfline, oracle_moment
from .painleve import VTable, beta_forward, freud_limit, mrs_number, string_residual, v_table, volterra_residual
from .polynomials import (
    LadderPair,
    MonicPolynomial,
    generate,
    ladder,
    mixed_recurrence_check,
    ode_coeffs,
    ode_residual,
    quadratic_decompose,
    quasi_orthogonality_check,
    resolve_ladder_variant,
    structure_coeffs,
    x2m_expansion,
)
# the polynomial-zero solver itself stays module-qualified (hofreud.zeros.zeros)
# so the package attribute `zeros` keeps naming the submodule
from .zeros import DensityLaw, ZeroSet, density, density_cdf, interlacing_check, scaled_zero_compare
from . import zeros as zeros  # noqa: F401  (re-assert the submodule binding)

__all__ = [
    "ConvergenceError",
    "DensityLaw",
    "DivergenceError",
    "FreudError",
    "InsufficientDataError",
    "LadderPair",
    "MomentTable",
    "MonicPolynomial",
    "ParameterError",
    "PoleError",
    "PrecisionExhaustedError",
    "QuadratureSpec",
    "RangeError",
    "RecurrenceTable",
    "VTable",
    "WeightParams",
    "ZeroSet",
    "beta_forward",
    "beta_from_hankel",
    "density",
    "density_cdf",
    "freud_limit",
    "generate",
    "hankel_det",
    "inner_product",
    "integrate_halfline",
    "interlacing_check",
    "ladder",
    "mixed_recurrence_check",
    "moment",
    "moment_ode_residual",
    "moment_table",
    "mrs_number",
    "mu0",
    "ode_coeffs",
    "ode_residual",
    "oracle_moment",
    "parity_dets",
    "quadratic_decompose",
    "quasi_orthogonality_check",
    "recurrence_table",
    "resolve_ladder_variant",
    "scaled_zero_compare",
    "string_residual",
    "structure_coeffs",
    "v_table",
    "volterra_residual",
    "weight_eval",
    "x2m_expansion",
]
