"""Iwasawa invariants of imaginary quadratic fields, p-rationality of
complex cubic fields, and prime scans for dihedral Artin representations."""

from .arith import CubicPoly, FactorType, factor_type_cubic, kronecker
from .artin import DihedralS3Rep, PrimeVerdict, TStatus, build_icosahedral_group, certify_T, in_S
from .cubicfield import CubicField, PRational, p_rational_cubic, p_rational_imquad
from .errors import (
    ClosureFailure,
    HypothesisViolated,
    IndexObstruction,
    InvalidDiscriminant,
    PrecisionExhausted,
    SearchExhausted,
)
from .invariants import LambdaValue, gold_test, gross_regulator, lambda_classify
from .lambda_algebra import CharSeries, StructureData, euler_characteristic, weierstrass_prepare
from .padic import PAdicNumber, iwasawa_log
from .quadfield import BinaryQF, ImagQuadField, class_number, splitting
from .survey import SurveyReport, heuristic_values, scan_lambda, scan_T

__version__ = "0.1.0"

__all__ = [
    "BinaryQF",
    "CharSeries",
    "ClosureFailure",
    "CubicField",
    "CubicPoly",
    "DihedralS3Rep",
    "FactorType",
    "HypothesisViolated",
    "ImagQuadField",
    "IndexObstruction",
    "InvalidDiscriminant",
    "LambdaValue",
    "PAdicNumber",
    "PRational",
    "PrecisionExhausted",
    "PrimeVerdict",
    "SearchExhausted",
    "StructureData",
    "SurveyReport",
    "TStatus",
    "build_icosahedral_group",
    "certify_T",
    "class_number",
    "euler_characteristic",
    "factor_type_cubic",
    "gold_test",
    "gross_regulator",
    "heuristic_values",
    "in_S",
    "iwasawa_log",
    "kronecker",
    "lambda_classify",
    "p_rational_cubic",
    "p_rational_imquad",
    "scan_T",
    "scan_lambda",
    "splitting",
    "weierstrass_prepare",
]
