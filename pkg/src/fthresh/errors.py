"""Exception hierarchy; the CLI maps each family to an exit code."""


class PreconditionError(ValueError):
    """Inputs violate a mathematical precondition (e.g. f not in sqrt(J))."""


class NotInRadicalError(PreconditionError):
    pass


class ContainmentError(PreconditionError):
    pass


class NotAtOriginError(PreconditionError):
    """f does not vanish at the origin."""


class ResourceError(RuntimeError):
    """A configured resource budget was exhausted."""


class DegreeBudgetExceeded(ResourceError):
    pass


class StabilizationError(ResourceError):
    """The root chain did not stabilize within the allowed Frobenius levels."""

    def __init__(self, message, chain=()):
        super().__init__(message)
        self.chain = tuple(chain)


class InvariantViolation(AssertionError):
    """An internally asserted mathematical invariant failed."""
