"""Linear-quotients certification and minimal linear free resolutions.

Ideals generated in one degree d are certified to have linear quotients, and
their d-linear resolutions are assembled one generator at a time with the
Horseshoe construction, then checked by independent oracles.
"""

from .field import QQ, PrimeField, parse_field
from .ideals import (
    ColonCertificate,
    IdealPresentation,
    LinearQuotientsError,
    certify_linear_quotients,
    colon_monomial,
    find_lq_order,
    height_of_linear_ideal,
    linear_part_of_colon,
    make_ideal,
    minimalize_monomial,
)
from .linalg import KERNEL
from .modules import GradedFreeModule, GradedMap, graded_piece, map_compose
from .poly import Polynomial, Ring, mono_divides, mono_quotient
from .resolution import (
    ConstructionError,
    Resolution,
    build_resolution,
    horseshoe_step,
    koszul_resolution,
    lift_through,
    linear_ideal_resolution,
)
from .verify import (
    BettiTable,
    betti_from_q,
    betti_from_resolution,
    bruteforce_minimal_resolution,
    check_complex,
    check_euler,
    check_exactness_degreewise,
    check_linear_and_minimal,
    check_pd,
    hilbert_series_monomial,
    verify_resolution,
)

__version__ = "0.1.0"
