"""Extension resummation of divergent perturbative series.

A weak-coupling series with a known signature ``gamma|alpha|delta`` is
rewritten in a one-parameter basis whose parameter is fixed by the series
itself.  The resulting extension gives finite-coupling sums, strong-coupling
coefficients and predictions for the next weak-coupling coefficient.
"""

from .extension import (
    ExtensionResult,
    OrderReductionError,
    coefficient_at,
    extend,
    omega_roots,
    phi,
    phi_star,
    predict_next,
    strong_coupling_head,
)
from .gamma_kernel import InfiniteFactorialError, OmegaNumber, factorial, generalized_binomial, omega_factorial
from .models import (
    MODELS,
    CoefficientUnavailable,
    OracleError,
    anharmonic_series,
    bender_wu_generate,
    model_series,
    oracle_ground_state,
    oracle_strong_limit,
    oracle_zero_dim,
    oracle_zero_dim_strong_limit,
    zero_dim_series,
)
from .quadrature import QuadratureError, integrate_semi_infinite
from .resummation import ResumEstimate, resum, resum_coupling, resum_mp, resum_second_form, weak_expansion_fit
from .signature import OmegaValuedError, Signature, WeakSeries, transformation

__version__ = "0.1.0"
