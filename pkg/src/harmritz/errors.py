"""Exception hierarchy.

``NumericError`` subclasses signal that the numbers themselves make an
operation ill-posed (the CLI maps them to exit code 3).  Everything else
that goes wrong with user input is a ``ConfigError`` (exit code 2).
"""


class HarmRitzError(Exception):
    """Base class for all package errors."""


class ConfigError(HarmRitzError):
    """Bad command line, configuration or file contents."""


class ParseError(ConfigError):
    """Malformed Matrix Market file."""

    def __init__(self, msg, lineno=None):
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)
        self.lineno = lineno


class UnsupportedField(ConfigError):
    """Matrix Market field we do not read (``pattern``, ``integer`` is fine)."""


class NumericError(HarmRitzError):
    """Base class for numerically ill-posed operations."""


class RankDeficient(NumericError):
    pass


class ConvergenceFailure(NumericError):
    def __init__(self, msg, iterations=None):
        super().__init__(msg)
        self.iterations = iterations


class SingularPencil(NumericError):
    pass


class SingularShift(NumericError):
    pass


class ZeroVector(NumericError):
    pass


class NoFinitePair(NumericError):
    pass


class NotAnEigenpair(NumericError):
    pass


class ShiftEqualsEigenvalue(NumericError):
    pass


class DegenerateDenominator(NumericError):
    pass


class NotApplicable(NumericError):
    """A theorem's hypotheses fail; ``reason`` is a short human-readable tag."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class EmptyGrid(ConfigError):
    pass


class IoError(ConfigError):
    """File could not be read or written."""
