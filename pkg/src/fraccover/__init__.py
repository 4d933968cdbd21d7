"""Verification toolkit for fractional [a,b]-covered and (a,b,k)-critical covered graphs."""

from .criterion import CoverageVerdict, CriterionCertificate, is_covered, is_critical_covered
from .extremal import build_extremal, demonstrate_sharpness
from .factor import FractionalFactor, find_factor, is_covered_constructive, verify_factor
from .graph import Graph
from .neighborhood import HypothesisReport, check_hypothesis
from .params import Params

__all__ = [
    "CoverageVerdict",
    "CriterionCertificate",
    "FractionalFactor",
    "Graph",
    "HypothesisReport",
    "Params",
    "build_extremal",
    "check_hypothesis",
    "demonstrate_sharpness",
    "find_factor",
    "is_covered",
    "is_covered_constructive",
    "is_critical_covered",
    "verify_factor",
]
