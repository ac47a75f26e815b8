"""Rigorous enclosures of li(x) and the closed-form bound functions."""

from .compare import Comparison, Verdict, certify_less, eval
from .enclosure import PRECISIONS, Enclosure, IvMath, iv_context
from .functions import BoundFunction, BoundSpec, bound_spec, j_function, panaitopol_coeffs
from .li import li
from .registry import parse_ident, resolve, table

__all__ = [
    "BoundFunction", "BoundSpec", "Comparison", "Enclosure", "IvMath", "PRECISIONS",
    "Verdict", "bound_spec", "certify_less", "eval", "iv_context", "j_function", "li",
    "panaitopol_coeffs", "parse_ident", "resolve", "table",
]
