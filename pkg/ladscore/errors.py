"""Exception hierarchy.

The CLI maps each family to an exit status, see ``ladscore.main``.
"""


class LadError(Exception):
    """Base class for ladscore errors."""
    exit_code = 3


class UsageError(LadError):
    """Invalid command-line configuration."""
    exit_code = 1


class DataError(LadError, ValueError):
    """Input data is malformed or violates a precondition."""
    exit_code = 2


class DegenerateDataError(DataError):
    """Data breaks the genericity assumptions so a result is undefined."""


class NumericalError(LadError, ArithmeticError):
    """Solver failure or a numerically singular problem."""
    exit_code = 3
