"""Orbit counting on the projective line for products of CM elliptic curves."""

from .arith import (
    Factorization,
    ImaginaryQuadraticField,
    chi,
    class_number,
    divisors,
    euler_phi,
    factorize,
    h_order,
    is_fundamental_discriminant,
    omega,
    phi_u,
)
from .counts import (
    ConductorPair,
    CountReport,
    UnsupportedFieldError,
    bianchi_count,
    count_cm_pair,
    count_gamma0_cusps,
    count_gl2_order,
    normalize_pair,
)
from .volcano import (
    NOT_COVERED,
    TruncatedVolcano,
    WalkQuery,
    build_truncated_volcano,
    count_walks_dp,
    rk,
    rk_prime_closed,
    to_dot,
)

__version__ = "0.1.0"
