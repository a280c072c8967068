"""Markoff-Rosenberger equations a*x^2 + b*y^2 + c*z^2 = d*x*y*z solved over
generalized Lucas sequences, with exact arithmetic and re-checkable
elimination certificates."""

from .bounds import (
    BoundReport,
    Envelope,
    bound_report,
    default_envelope,
    feasible_gaps,
    min_power_gap,
    preset_envelope,
    verify_envelope,
    zero_gap_exponents,
)
from .elimination import (
    DegenerateCurve,
    QuarticCurve,
    build_quartic,
    certificate_contradicts,
    diagonal_eliminate,
    final_quadratic,
    modular_eliminate,
    quad_solvable,
    quartic_case_solutions,
    quartic_integral_points,
    shift_reduce,
    verify_certificate,
)
from .lucas import (
    IdentityUnavailable,
    InvalidParams,
    ModularSequence,
    SequenceParams,
    binet,
    fundamental_identity_check,
    is_member,
    mod_reduce,
    shift_identity_coeffs,
    term,
    validate_params,
)
from .pipeline import (
    ResolutionReport,
    ResolveConfig,
    brute_force_oracle,
    resolve,
)
from .quadfield import QuadFieldElement
from .tuples import ROSENBERGER_SET, MarkoffTuple, TupleNotInA, permutations_of

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DegenerateCurve",
    "Envelope",
    "IdentityUnavailable",
    "InvalidParams",
    "MarkoffTuple",
    "ModularSequence",
    "QuadFieldElement",
    "QuarticCurve",
    "ROSENBERGER_SET",
    "ResolutionReport",
    "ResolveConfig",
    "SequenceParams",
    "TupleNotInA",
    "binet",
    "bound_report",
    "brute_force_oracle",
    "build_quartic",
    "certificate_contradicts",
    "default_envelope",
    "diagonal_eliminate",
    "feasible_gaps",
    "final_quadratic",
    "fundamental_identity_check",
    "is_member",
    "min_power_gap",
    "mod_reduce",
    "modular_eliminate",
    "permutations_of",
    "preset_envelope",
    "quad_solvable",
    "quartic_case_solutions",
    "quartic_integral_points",
    "resolve",
    "shift_identity_coeffs",
    "shift_reduce",
    "term",
    "validate_params",
    "verify_certificate",
    "verify_envelope",
    "zero_gap_exponents",
]
