"""Exact certificates: polynomial positivity, monotonicity, thresholds."""

from .monotone import MonotoneCert, Monotonicity, certify_monotone
from .poly import IntPoly
from .polys import F_POLY, POLYS, R_NUMERATOR, S_NUMERATOR, S_POLY, T_POLY, derive_f, derive_s, identity_holds
from .positivity import PositivityCert, certify_positive
from .roots import RootInterval, count_real_roots, isolate_real_roots, refine
from .thresholds import (a0_holds, a1_quadratic_form_positive, envelope_a, h_positive_from,
                         h_sign_at, threshold_A0, threshold_A0_cert, threshold_A1)

__all__ = [
    "F_POLY", "IntPoly", "MonotoneCert", "Monotonicity", "POLYS", "PositivityCert",
    "R_NUMERATOR", "RootInterval", "S_NUMERATOR", "S_POLY", "T_POLY", "a0_holds",
    "a1_quadratic_form_positive", "certify_monotone", "certify_positive", "count_real_roots",
    "derive_f", "derive_s", "envelope_a", "h_positive_from", "h_sign_at", "identity_holds",
    "isolate_real_roots", "refine", "threshold_A0", "threshold_A0_cert", "threshold_A1",
]
