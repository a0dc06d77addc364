"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command-line layer
never needs its own lookup table.
"""


class ZetaRegError(Exception):
    exit_code = 1


class PoleError(ZetaRegError, ValueError):
    """Evaluation requested at a pole (s = 1 for zeta, nonpositive integers for gamma)."""

    exit_code = 2


class SingularityError(ZetaRegError, ValueError):
    """Point lies inside an exclusion disk around a singular point of P(s)."""

    exit_code = 3

    def __init__(self, message, location=None, kind=None, k=None):
        super().__init__(message)
        self.location = location
        self.kind = kind
        self.k = k


class DomainError(ZetaRegError, ValueError):
    exit_code = 4


class AccuracyError(ZetaRegError, ArithmeticError):
    """Requested accuracy cannot be reached with the available resources."""

    exit_code = 5


class RangeError(ZetaRegError, ValueError):
    """Argument outside the range covered by a precomputed table, or a size cap."""

    exit_code = 6


class ConditioningError(ZetaRegError, ArithmeticError):
    exit_code = 7


class VerdictError(ZetaRegError):
    """Operation needs a regularizable spectrum but got one that is not."""

    exit_code = 8
