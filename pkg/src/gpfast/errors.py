"""Exception and warning types raised by gpfast."""


class GpFastError(Exception):
    """Base class for all gpfast errors."""


class NumericalError(GpFastError):
    """Base class for failures of a numerical routine on its input."""


class NotPositiveDefinite(NumericalError, ValueError):
    """A factorization or recursion hit a non-positive pivot.

    ``index`` is the zero-based order of the failing leading minor for
    Cholesky, or the order ``k`` of the offending reflection coefficient for
    the Durbin recursion.
    """

    def __init__(self, index, message=None):
        self.index = int(index)
        if message is None:
            message = f"matrix is not positive definite (failure at index {self.index})"
        super().__init__(message)


class SingularMatrix(NumericalError, ValueError):
    """Elimination found no usable pivot."""


class DimensionMismatch(GpFastError, ValueError):
    pass


class NotEvenlySpaced(GpFastError, ValueError):
    pass


class InvalidState(NumericalError):
    """The sampler was started from a state with zero likelihood."""


class NonFiniteLikelihood(NumericalError):
    """A log-likelihood returned NaN or +inf."""


class ShrinkLimitExceeded(NumericalError):
    """The slice bracket shrank more times than allowed."""


class ConditioningWarning(UserWarning):
    """Result was computed but the input is close to singular."""
