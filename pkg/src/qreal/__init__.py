"""q-deformed rational, real and complex numbers.

Exact integer-polynomial arithmetic for q-rationals, q-adic Laurent series
for q-reals, certified complex evaluation in the convergence region of the
reciprocal expansion, jump-measure sums, and the modular/hypergeometric
q-complex numbers, with a CLI front end (``qreal``).
"""

from . import errors
from .analytic import (
    DISK_ANNULUS,
    DISK_D,
    CertifiedComplex,
    RegionParams,
    continuant_min_modulus,
    eval_in_D,
    eval_in_disk,
    eval_negative_q,
    evaluate,
    golden_envelope,
    in_drop_region,
    in_region_D,
    left_limit,
    negative_axis_a,
    solve_a,
    x_limits,
)
from .cf import (
    CFStream,
    CFWord,
    cf_decode,
    cf_encode_rational,
    cf_encode_real,
    continuant,
    golden_stream,
    infinity_continuant,
    left_limit_any,
    left_limit_symbolic,
    negate_reciprocal,
    parameter_inverse,
    q_continuants,
    q_rational,
    q_rational_any,
    translate,
)
from .jumps import (
    JumpRecord,
    TotalJumpResult,
    beta_root,
    enumerate_words,
    formal_total_jump,
    h1_series,
    h2_series,
    in_region_Dprime,
    jump_at,
    numeric_total_jump,
    phi_series,
)
from .poly import IntLaurent, IntPoly, RatFuncQ, poly_gcd
from .qcomplex import (
    QComplexParams,
    boundary_check,
    h_limit,
    h_value,
    jacobi_special,
    q_complex_value,
)
from .series import (
    R_STAR,
    GrowthSchedule,
    counterexample_stream,
    q_real_series,
    radius_estimate,
    reciprocal_series,
    verify_schedule,
)
from .special import (
    ModularPoint,
    SeriesSum,
    bessel_ratio_limit,
    classical_bessel,
    gauss_2f1,
    log_gamma,
    q_bessel,
    q_cos,
    q_cotan,
    q_sin,
    theta_lambda,
    transcendental_qvalue,
)
