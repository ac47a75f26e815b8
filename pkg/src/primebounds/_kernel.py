"""Select the segment sieve implementation.

The compiled kernel is used when it imports; ``PRIMEBOUNDS_PURE=1`` forces
the numpy fallback.
"""

import os

from . import _sieve_py

try:
    from . import _sieve_ext
except ImportError:  # extension not built
    _sieve_ext = None

BACKENDS = {"python": _sieve_py.SegmentSieve}
if _sieve_ext is not None:
    BACKENDS["compiled"] = _sieve_ext.SegmentSieve

if os.environ.get("PRIMEBOUNDS_PURE") or _sieve_ext is None:
    DEFAULT_BACKEND = "python"
else:
    DEFAULT_BACKEND = "compiled"


def segment_sieve(backend=None):
    name = backend or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown sieve backend {name!r}; have {sorted(BACKENDS)}") from None
