"""Dynamics of Chebyshev permutation polynomials over Z/2^k and Z/3^k."""

from .chebyshev import (
    OpCounter,
    RingSpec,
    coefficient,
    deriv_at_pm1,
    deriv_at_zero,
    evaluate,
    evaluate_array,
    is_permutation,
    iterate,
    semigroup_check,
)
from .graph import (
    CycleSpectrum,
    GraphDecomposition,
    VerifyReport,
    build_graph,
    compose_spectra,
    cycle_states_p2,
    observed_spectrum,
    predicted_p2_even,
    predicted_p2_odd,
    predicted_p3_pm1,
    predicted_p3_zero,
    predicted_spectrum,
    selfloops_p3,
    verify,
)
from .padic import INF, digit_sum, factorial_valuation, inv_mod, vp, vp_star
from .period import (
    PeriodRecord,
    l_s_of,
    period_closed,
    period_oracle,
    period_p2_closed,
    period_p3_closed,
    s_exponent,
    theorem1_check,
    v_s_of,
    w_of,
)

__version__ = "0.1.0"
