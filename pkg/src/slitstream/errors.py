"""Exception types shared across the package."""


class DomainError(ValueError):
    """Field evaluated outside its validity region.

    `reason` is "exclusion" (inside a slit exclusion disk) or "barrier"
    (on or across the barrier line); streamline tracing maps these to the
    matching termination reasons instead of failing.
    """

    def __init__(self, message, reason="exclusion"):
        super().__init__(message)
        self.reason = reason


class DegenerateDensityError(DomainError):
    """Carrier density too small to define velocity or quantum potential."""

    def __init__(self, message):
        super().__init__(message, reason="exclusion")


class SeedError(ValueError):
    """Streamline seed lies outside the valid domain or in a stagnant spot."""


class StepSizeError(RuntimeError):
    """Adaptive integrator could not meet its tolerances."""
