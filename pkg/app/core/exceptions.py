class PellError(Exception):
    """Base class for every error raised by the solver."""

    pass


class InvalidInputError(PellError, ValueError):
    """Custom exception for inputs outside an operation's domain."""

    pass


class PerfectSquareError(InvalidInputError):
    """Raised when d is a perfect square, so x^2 - d*y^2 = 1 has no nontrivial solution."""

    def __init__(self, d: int):
        super().__init__(f"d={d} is a perfect square")
        self.d = d


class ScheduleParseError(InvalidInputError):
    """Custom exception for malformed LLL schedule strings."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotInvertibleError(PellError, ArithmeticError):
    """Raised when a modular inverse does not exist."""

    pass


class InconsistentCongruenceError(PellError, ArithmeticError):
    """Raised when two congruences have no common solution."""

    pass


class StepLimitError(PellError):
    """Raised when a solver exceeds its step budget."""

    def __init__(self, d: int, steps: int):
        super().__init__(f"no solution for d={d} within {steps} steps")
        self.d = d
        self.steps = steps


class PrecisionExhaustedError(PellError):
    """Raised when a rational approximation stays too coarse after all refinements."""

    pass


class DegenerateBasisError(PellError):
    """Raised when a lattice basis has zero determinant."""

    pass


class ZeroDenominatorError(PellError):
    """Raised when the reduced lattice vector has no component along the alpha vector."""

    pass


class InvariantViolationError(PellError):
    """Raised when an exactness invariant fails. Always an implementation bug."""

    pass
