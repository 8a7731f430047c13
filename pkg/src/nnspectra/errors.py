"""Exception types shared across the package."""


class NNSpectraError(Exception):
    """Base class for all package errors."""


class MatrixParseError(NNSpectraError, ValueError):
    """Malformed matrix text (ragged rows, bad cell syntax, bad header)."""


class DomainError(NNSpectraError, ValueError):
    """A value outside the admissible domain, e.g. a negative entry."""


class BudgetExceeded(NNSpectraError, RuntimeError):
    """A search or size budget ran out before the computation finished.

    ``partial`` carries whatever best-so-far object the raising routine had,
    or None.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PreconditionError(NNSpectraError, ValueError):
    """An operation was called on an input outside its contract."""


class WitnessError(NNSpectraError, ValueError):
    """A restriction or congruence witness failed exact verification."""


class InfeasibleLP(NNSpectraError, ArithmeticError):
    pass


class UnboundedLP(NNSpectraError, ArithmeticError):
    pass
