"""Exact Gauss periods and weight distributions of trace-defined cyclic codes.

The package builds small finite fields in discrete-log form, computes Gauss
periods exactly in Z[zeta_p], evaluates closed-form weight distributions of
cyclic codes whose defining elements have pairwise coprime orders, and checks
everything against an exhaustive brute-force oracle.
"""

from .closed_form import (
    DerivedParams,
    PeriodCache,
    binary_pair_with_constant_distribution,
    closed_form_distribution,
    derive_params,
    enumerator_string,
    pair_distribution,
    pair_with_constant_distribution,
    unit_pair_distribution,
)
from .cyclotomy import (
    CycInt,
    GaussPeriodTable,
    additive_character,
    class_number_imaginary,
    cyclotomic_class,
    gauss_period_direct,
    gauss_period_subfield,
    period_index2,
    period_quadratic,
    period_semiprimitive,
    semiprimitive_params,
)
from .errors import BudgetError, ComputationError, ParameterError
from .field import MAX_FIELD_SIZE, ZERO, FieldSpec, build_field, poly_to_str
from .trace_code import (
    CodeSpec,
    WeightDistribution,
    code_spec,
    codeword,
    collapse_to_codewords,
    dimension,
    distribution_bruteforce,
    validate,
    weight_bruteforce,
    weight_closedform,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CodeSpec",
    "ComputationError",
    "CycInt",
    "DerivedParams",
    "FieldSpec",
    "GaussPeriodTable",
    "MAX_FIELD_SIZE",
    "ParameterError",
    "PeriodCache",
    "WeightDistribution",
    "ZERO",
    "additive_character",
    "binary_pair_with_constant_distribution",
    "build_field",
    "class_number_imaginary",
    "closed_form_distribution",
    "code_spec",
    "codeword",
    "collapse_to_codewords",
    "cyclotomic_class",
    "derive_params",
    "dimension",
    "distribution_bruteforce",
    "enumerator_string",
    "gauss_period_direct",
    "gauss_period_subfield",
    "pair_distribution",
    "pair_with_constant_distribution",
    "period_index2",
    "period_quadratic",
    "period_semiprimitive",
    "poly_to_str",
    "semiprimitive_params",
    "unit_pair_distribution",
    "validate",
    "weight_bruteforce",
    "weight_closedform",
]
