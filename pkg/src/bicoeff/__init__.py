"""Coefficient bounds for two families of bi-univalent function classes:
truncated series machinery, exact identity checks and a membership sampler."""

from .bounds import BoundReport, corollary_formula, evaluate_bounds
from .class_operator import (
    ArgFamily,
    ClassParams,
    ConditionReport,
    ReFamily,
    check_condition,
    make_family,
    operator_coefficients_symbolic,
    operator_series,
)
from .polyring import MultiPoly, parse_rational
from .series import NormalizedSeries, TruncatedSeries, compose, pow_fractional, reversion

__version__ = "0.1.0"
