"""Exception types shared across the package."""


class DomainError(ValueError):
    """An evaluation point lies outside the region where the quantity is defined."""


class ResolutionError(ValueError):
    """A grid resolution is below the supported minimum."""


class UnsupportedOrderError(ValueError):
    """An iteration or equation order beyond the supported range was requested."""


class MomentOrderError(ValueError):
    """The requested atom needs vanishing moments beyond what this constructor builds."""


class ConstructionError(RuntimeError):
    """An atom or solver construction could not be completed."""


class NumericalFailure(RuntimeError):
    """A quadrature or solver produced a non-finite result.

    Carries partial diagnostics in ``info`` so callers can report what blew up.
    """

    def __init__(self, message, info=None):
        super().__init__(message)
        self.info = dict(info or {})
