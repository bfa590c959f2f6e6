"""Exception hierarchy.

Every error raised by the package derives from :class:`MeanderError`.  The
four intermediate classes map onto the CLI exit codes (parse 2, numeric 3,
precondition 4); I/O problems surface as plain ``OSError`` (exit 5).
"""


class MeanderError(Exception):
    pass


class InternalConsistencyError(MeanderError, AssertionError):
    """Two independent computations that must agree did not."""


# -- parse / malformed input (exit 2) ---------------------------------------

class ParseError(MeanderError, ValueError):
    pass


class BracketSyntaxError(ParseError):
    def __init__(self, message, token=None, position=None):
        super().__init__(message)
        self.token = token
        self.position = position


class PrefixViolation(ParseError):
    def __init__(self, index, opened, closed):
        super().__init__(
            f"block {index} closes more arcs than were opened "
            f"(prefix opens {opened}, closes {closed})"
        )
        self.index = index


class TotalMismatch(ParseError):
    def __init__(self, opened, closed):
        super().__init__(f"total opening brackets {opened} != closing brackets {closed}")
        self.opened = opened
        self.closed = closed


class InvalidArcCollection(ParseError):
    pass


class NotInvolution(InvalidArcCollection):
    pass


class ParityViolation(InvalidArcCollection):
    def __init__(self, a, b):
        super().__init__(f"arc ({a},{b}) joins two points of equal parity")
        self.arc = (a, b)


class Interlaced(InvalidArcCollection):
    def __init__(self, a, b):
        super().__init__(f"arcs starting at {a} and {b} interlace")
        self.a = a
        self.b = b


class SizeMismatch(ParseError):
    pass


class PolynomialSyntaxError(ParseError):
    pass


# -- numeric limits (exit 3) -------------------------------------------------

class NumericError(MeanderError, ArithmeticError):
    pass


class Overflow(NumericError, OverflowError):
    pass


class TooLargeForOracle(NumericError):
    pass


# -- violated preconditions (exit 4) ----------------------------------------

class PreconditionError(MeanderError, ValueError):
    pass


class NotConnected(PreconditionError):
    pass


class NotCleaved(PreconditionError):
    pass


class NotCircleFree(PreconditionError):
    pass


class CircleDetected(NotCircleFree):
    pass


class DegenerateBoundary(PreconditionError):
    pass


class EmptyTuple(PreconditionError):
    pass


class TooManyFamilies(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError, IndexError):
    pass


class BadParameters(PreconditionError):
    pass


class NotHomogeneous(PreconditionError):
    pass


class SearchBudgetExceeded(PreconditionError):
    def __init__(self, message, budget):
        super().__init__(f"{message} (budget: {budget})")
        self.budget = budget
