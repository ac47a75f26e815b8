"""Explicit bounds for pi(x) and theta(x) with rigorous range verification."""

from .errors import (CheckpointError, ConfigurationError, DomainError, MonotonicityError,
                     PrimeBoundsError, UnresolvedError)
from .sieve import (DEFAULT_CONFIG, Checkpoint, PrimeStats, SieveConfig, count_primes,
                    prime_stream, stats_at)
from .analytic import BoundFunction, BoundSpec, Enclosure, certify_less, eval, li, panaitopol_coeffs
from .certify import IntPoly, certify_monotone, certify_positive, isolate_real_roots, threshold_A0, threshold_A1
from .verify import (CheckReport, CheckTask, theta_envelope_check, verify_lower, verify_ramanujan,
                     verify_rnxi, verify_upper)

__version__ = "0.1.0"

__all__ = [
    "BoundFunction", "BoundSpec", "CheckReport", "CheckTask", "Checkpoint", "CheckpointError",
    "ConfigurationError", "DEFAULT_CONFIG", "DomainError", "Enclosure", "IntPoly",
    "MonotonicityError", "PrimeBoundsError", "PrimeStats", "SieveConfig", "UnresolvedError",
    "certify_less", "certify_monotone", "certify_positive", "count_primes", "eval",
    "isolate_real_roots", "li", "panaitopol_coeffs", "prime_stream", "stats_at",
    "theta_envelope_check", "threshold_A0", "threshold_A1", "verify_lower", "verify_ramanujan",
    "verify_rnxi", "verify_upper",
]
