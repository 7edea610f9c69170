"""Exact computation of ramification invariants for Artin-Schreier
extensions of Laurent-series fields, including the rank-1 defect
family over Z[1/p]."""

from .errors import RamifyError
from .extension import (
    ASExtension,
    BestCase,
    BestForm,
    DifferenceOperators,
    LElement,
    RamificationType,
    classify,
    integral_basis,
    reduce_to_best,
)
from .fields import Expr, FieldSpec, ResidueElem, check_identity
from .invariants import (
    InvariantReport,
    LogForm,
    build_report,
    different_ideal,
    ideal_h,
    ideal_i_sigma,
    ideal_j,
    norm_of_j,
    refined_swan,
    trace_dual_cut,
)
from .parsing import parse_field_spec, parse_series
from .series import Cut, LaurentSeries, ValueGroup
from .tower import TowerSpec, best_f_descent, check_step_identity, tower_levels, tower_report

__version__ = "0.1.0"

__all__ = [
    "ASExtension", "BestCase", "BestForm", "Cut", "DifferenceOperators",
    "Expr", "FieldSpec", "InvariantReport", "LElement", "LaurentSeries",
    "LogForm", "RamificationType", "RamifyError", "ResidueElem", "TowerSpec",
    "ValueGroup", "best_f_descent", "build_report", "check_identity",
    "check_step_identity", "classify", "different_ideal", "ideal_h",
    "ideal_i_sigma", "ideal_j", "integral_basis", "norm_of_j",
    "parse_field_spec", "parse_series", "reduce_to_best", "refined_swan",
    "tower_levels", "tower_report", "trace_dual_cut",
]
