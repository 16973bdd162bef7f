"""Exception hierarchy shared across the package."""


class KDError(Exception):
    """Base class for all package errors."""


class ValidationError(KDError, ValueError):
    """An input violated a matrix invariant.

    ``invariant`` names the violated property (``"hermiticity"``, ``"trace"``,
    ``"positivity"``, ...) and ``magnitude`` the offending deviation.
    """

    def __init__(self, invariant, magnitude=None, message=None):
        self.invariant = invariant
        self.magnitude = magnitude
        if message is None:
            message = f"{invariant} violated"
            if magnitude is not None:
                message += f" (deviation {magnitude:.3e})"
        super().__init__(message)


class DimensionError(KDError, ValueError):
    pass


class UnsupportedModelError(KDError):
    pass


class DegenerateInputError(KDError):
    """The state lies in the classical set, so the geometric witness is undefined."""


class NotDetectedError(KDError):
    """The witness source cannot certify this state (e.g. a PPT state)."""


class FactorizationError(KDError):
    pass


class UndefinedWeakValueError(KDError, ZeroDivisionError):
    pass


class ReconstructionError(KDError):
    pass


class StateFileError(KDError):
    """A state file could not be read or parsed."""
