"""Exception hierarchy shared by every module of the package."""


class HoloError(Exception):
    """Base class for all errors raised by holoeikonal."""


class DivisionByZero(HoloError, ZeroDivisionError):
    pass


class ZeroBase(HoloError, ValueError):
    pass


class DegreeCapExceeded(HoloError, ValueError):
    pass


class ZeroDivisorPolynomial(HoloError, ZeroDivisionError):
    pass


class PreconditionViolation(HoloError, ValueError):
    pass


class ParseError(HoloError, ValueError):
    """Input text does not match the grammar.

    ``position`` is the 0-based character offset where parsing failed and
    ``expected`` names what the parser was looking for.
    """

    def __init__(self, message, position=None, expected=None):
        self.position = position
        self.expected = expected
        if position is not None:
            message = f"{message} (at position {position})"
        if expected:
            message = f"{message}; expected {expected}"
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class NonPolynomial(ParseError):
    pass


class EvaluationOverflow(HoloError, OverflowError):
    pass


class SingularMatrix(HoloError, ValueError):
    pass


class NoEntireSolution(HoloError):
    """``g`` has a multi-variable block that is not a ridge polynomial.

    Carries the partition computed so far and the classification whose
    ``witness`` is the offending block.
    """

    def __init__(self, partition, classification):
        self.partition = partition
        self.classification = classification
        super().__init__(classification.detail or "no entire solution")
