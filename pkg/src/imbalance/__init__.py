"""Derivative imbalance, ambiguity, deficiency and bounds for functions between finite Abelian groups."""

from .bounds import BoundRecord, evaluate_bounds, gather_analyses, open_problem_info
from .ddt import (
    DDTable,
    DifferentialSpectrum,
    ddt,
    deficiency,
    differential_uniformity,
    is_apn,
    is_pn,
    spectrum,
    t_f,
)
from .errors import (
    CapacityError,
    DomainError,
    IdentityViolation,
    ImbalanceError,
    InapplicableError,
    InvalidGroupError,
    InvalidModulusError,
    InvalidTransformError,
    NotAFunctionError,
    ParseError,
    SchemaError,
)
from .estimator import ImbalanceFeatures
from .functable import (
    AffineMap,
    FunctionTable,
    ccz_transform,
    derivative,
    ea_transform,
    random_bijection,
    random_function,
    second_derivative,
)
from .gfield import (
    FieldSpec,
    build_gold,
    build_inverse,
    build_power,
    build_projection,
    build_quadratic,
    make_field,
)
from .group import GroupSpec, character, count_involutions, make_group, parse_group
from .indicators import (
    ambiguity,
    ambiguity_from_nb,
    derivative_imbalance,
    imbalance,
    indicator_report,
    optimum_ambiguity_threshold,
    pair_count_oracle,
    three_value_relation,
)
from .report import analyze_function, verify_function
from .search import exhaustive_min_nb
from .spectral import (
    cross_identities,
    fourier,
    linearity,
    nonlinearity,
    plateaued_profile,
    power_plateaued_test,
)
from .tableio import load_table, parse_table
from .validation import check_group, check_seed, check_table, check_tables

__all__ = [
    "AffineMap",
    "ambiguity",
    "ambiguity_from_nb",
    "analyze_function",
    "BoundRecord",
    "build_gold",
    "build_inverse",
    "build_power",
    "build_projection",
    "build_quadratic",
    "CapacityError",
    "ccz_transform",
    "character",
    "check_group",
    "check_seed",
    "check_table",
    "check_tables",
    "count_involutions",
    "cross_identities",
    "ddt",
    "DDTable",
    "deficiency",
    "derivative",
    "derivative_imbalance",
    "differential_uniformity",
    "DifferentialSpectrum",
    "DomainError",
    "ea_transform",
    "evaluate_bounds",
    "exhaustive_min_nb",
    "FieldSpec",
    "fourier",
    "FunctionTable",
    "gather_analyses",
    "GroupSpec",
    "IdentityViolation",
    "imbalance",
    "ImbalanceError",
    "ImbalanceFeatures",
    "InapplicableError",
    "indicator_report",
    "InvalidGroupError",
    "InvalidModulusError",
    "InvalidTransformError",
    "is_apn",
    "is_pn",
    "linearity",
    "load_table",
    "make_field",
    "make_group",
    "nonlinearity",
    "NotAFunctionError",
    "open_problem_info",
    "optimum_ambiguity_threshold",
    "pair_count_oracle",
    "parse_group",
    "parse_table",
    "ParseError",
    "plateaued_profile",
    "power_plateaued_test",
    "random_bijection",
    "random_function",
    "SchemaError",
    "second_derivative",
    "spectrum",
    "t_f",
    "three_value_relation",
    "verify_function",
]
