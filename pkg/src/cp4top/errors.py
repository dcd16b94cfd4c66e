"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """Base class for mathematically meaningful failures.

    The CLI maps these to exit code 1; anything else is a bug.
    """


class PolySyntaxError(DomainError):
    def __init__(self, message: str, position: int, text: str = "") -> None:
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownVariableError(DomainError):
    pass


class NotHomogeneousError(DomainError):
    pass


class DimensionError(DomainError):
    pass


class NotSingularError(DomainError):
    """The germ has a nonzero constant or linear part at the origin."""


class NotZeroDimensionalError(DomainError):
    pass


class PointNotOnHypersurfaceError(DomainError):
    pass


class NotSemiquasihomogeneousError(DomainError):
    pass


class DegenerateError(DomainError):
    pass


class WeightsError(DomainError):
    pass


class WallCongruenceError(DomainError):
    pass


class InvariantsError(DomainError):
    pass


class HypothesisError(DomainError):
    """A hypothesis of the homeomorphism criterion is not met."""


class PreconditionError(DomainError):
    pass
