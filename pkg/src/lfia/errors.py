"""Exception types raised by the simulator."""


class LfiaError(Exception):
    """Base class for all simulator errors."""


class InvalidConfig(LfiaError, ValueError):
    pass


class NotHermitian(LfiaError, ValueError):
    pass


class NoConvergence(LfiaError, ArithmeticError):
    pass


class Singular(LfiaError, ArithmeticError):
    """Matrix is numerically singular; the caller should redraw the trial."""


class SingularEffectiveChannel(Singular):
    pass


class IndexOutOfRange(LfiaError, IndexError):
    pass


class BudgetExceeded(LfiaError, RuntimeError):
    pass


class DegenerateRun(LfiaError, RuntimeError):
    """A trial stayed degenerate after the maximum number of redraws."""
