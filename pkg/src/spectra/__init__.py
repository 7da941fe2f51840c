"""Exact commuting, annihilating and f-probabilities in finite groups and
rings, the structure transports between them, and spectrum enumeration at
desk scale.
"""

from .config import DEFAULT_CAPS, Caps
from .core import (
    ANNIHILATE,
    COMMUTE,
    FiniteGroup,
    FiniteRing,
    PolySpec,
    Rational,
    format_rational,
    group_inv,
    group_op,
    parse_rational,
    ring_add,
    ring_mul,
    ring_neg,
    trivial_ring,
    validate_group,
    validate_ring,
)
from .constructions import (
    catalog,
    circle_group,
    commutator_ring,
    direct_product_group,
    direct_product_ring,
    malcev_group,
    nring,
)
from .probability import (
    ProbabilityResult,
    pr_ann_ring,
    pr_c_group,
    pr_c_ring,
    pr_f_ring,
)
from .spectrum import (
    BilinearFamilySpec,
    Spectrum,
    enumerate_bilinear_rings,
    enumerate_general_rings,
    gate_check_32,
    odd_round_trip,
    spectrum_of,
)
from .structure import (
    NilpotencyReport,
    SubgroupMask,
    abelian_decomposition,
    center_group,
    commutator,
    derived_subgroup,
    generated_subgroup,
    is_antisymmetric,
    is_associative,
    is_strongly_antisymmetric,
    lower_central_series,
    p_primary_decomposition,
    parity_and_p,
    quotient_group,
    ring_powers,
)
from .verify import SUITES, VerifyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "ANNIHILATE", "COMMUTE", "BilinearFamilySpec", "Caps", "DEFAULT_CAPS",
    "FiniteGroup", "FiniteRing", "NilpotencyReport", "PolySpec",
    "ProbabilityResult", "Rational", "SUITES", "Spectrum", "SubgroupMask",
    "VerifyReport", "abelian_decomposition", "catalog", "center_group",
    "circle_group", "commutator", "commutator_ring", "derived_subgroup",
    "direct_product_group", "direct_product_ring", "enumerate_bilinear_rings",
    "enumerate_general_rings", "format_rational", "gate_check_32",
    "generated_subgroup", "group_inv", "group_op", "is_antisymmetric",
    "is_associative", "is_strongly_antisymmetric", "lower_central_series",
    "malcev_group", "nring", "odd_round_trip", "p_primary_decomposition",
    "parity_and_p", "parse_rational", "pr_ann_ring", "pr_c_group", "pr_c_ring",
    "pr_f_ring", "quotient_group", "ring_add", "ring_mul", "ring_neg",
    "ring_powers", "run_suite", "spectrum_of", "trivial_ring",
    "validate_group", "validate_ring",
]
