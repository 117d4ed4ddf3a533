"""F-thresholds, test ideals and jumping numbers of hypersurfaces over F_p."""

from ._kernels import BACKEND
from .core import (
    FieldElement,
    Poly,
    PolyRing,
    PrimeField,
    PRational,
    make_ring,
    poly_pow,
    prational_cmp,
)
from .errors import (
    ContainmentError,
    DegreeBudgetExceeded,
    InvariantViolation,
    NotAtOriginError,
    NotInRadicalError,
    PreconditionError,
    ResourceError,
    StabilizationError,
)
from .frobenius import FrobeniusLevel, bracket_power, eth_root, fedder_fpure, power_root, splitting_test
from .groebner import (
    Ideal,
    contains,
    elementwise_power,
    groebner_basis,
    ideal_eq,
    ideal_leq,
    ideal_power,
    ideal_product,
    ideal_sum,
    normal_form,
    radical_member,
)
from .parser import ParseError, parse_generators, parse_poly
from .rationals import simplest_in
from .testideal import (
    CorrespondenceReport,
    TestIdealProfile,
    jumping_numbers,
    test_ideal,
    verify_correspondence,
)
from .thresholds import ThresholdEstimate, fpt, monotonicity_check, nu, scaling_check, threshold_interval

__version__ = "0.1.0"
