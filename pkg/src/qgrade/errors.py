"""Exception types raised by qgrade."""


class QGradeError(Exception):
    """Base class for every error raised by this package."""


class InputError(QGradeError):
    """Malformed or inconsistent user input (exit status 2 in the CLI)."""


class ParseError(InputError):
    pass


class MalformedMatching(InputError):
    pass


class BadPointCount(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class CircleMismatch(InputError):
    pass


class GradingSetMismatch(InputError):
    pass


class InvalidDiagram(InputError):
    pass


class BoundaryMismatch(InputError):
    pass


class ClosedDiagramHasNoBoundary(InputError):
    pass


class UnknownWord(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class UnknownAlgebraElement(InputError):
    pass


class MathError(QGradeError):
    """A well-formed question without a (unique) answer (exit status 1)."""


class NoSolution(MathError):
    pass


class IndeterminateCoset(MathError):
    pass


class NotConnecting(MathError):
    pass


class NoConnectingDomain(MathError):
    pass


class NoRationalDomain(MathError):
    pass


class IndeterminateGrading(MathError):
    pass
