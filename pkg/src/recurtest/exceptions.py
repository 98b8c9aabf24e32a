"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when user-supplied data or parameters violate a precondition."""


class DegenerateWeightError(InvalidInputError):
    """Raised when all pairwise distances are identical, so the Gaussian
    weight cannot be calibrated (zero spread)."""


class InternalConsistencyError(RuntimeError):
    """Raised when an internal numerical invariant is violated beyond
    round-off tolerance."""
