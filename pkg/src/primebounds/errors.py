class PrimeBoundsError(Exception):
    pass


class DomainError(PrimeBoundsError, ValueError):
    """A bound function was evaluated outside its admissible domain."""


class ConfigurationError(PrimeBoundsError, ValueError):
    pass


class CheckpointError(PrimeBoundsError):
    """A checkpoint file exists but cannot be trusted."""


class MonotonicityError(PrimeBoundsError):
    """A prime-jump check was requested without a monotonicity certificate."""


class UnresolvedError(PrimeBoundsError):
    """An enclosure comparison stayed ambiguous at the precision cap."""
