"""Exact forward and inverse Pell problems for real quadratic fields."""

from .cf_engine import (
    Convergent,
    Expansion,
    QuadraticInteger,
    QuadraticSurd,
    cf_to_rational,
    convergents,
    expand_omega,
    rational_two_expansions,
    verify_quotient_bound,
    xi_nu,
)
from .inverse import (
    InverseKey,
    Progression,
    attached_intervals,
    cross_check_parameterizations,
    halter_koch_progression,
    integer_in_interval,
    progression_elements,
    progressions_for_key,
)
from .least_type import classify, is_least_type_field, non_least_unit_bound, reduced_family
from .pell import aac_check, fundamental_unit, pell4_solutions, unit_size_stats
from .symmetry import continuant, parity_of_t, rational_from_symmetric, symmetric_form

__version__ = "0.1.0"
