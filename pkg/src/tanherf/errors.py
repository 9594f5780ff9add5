"""Exception types shared across the package."""


class TanhErfError(Exception):
    """Base class for all package errors."""


class DomainError(TanhErfError, ValueError):
    """Argument lies outside the domain of the function."""


class UnsupportedOrderError(TanhErfError, ValueError):
    """Series order, polynomial degree or derivative depth above the cap."""


class AccuracyError(TanhErfError, ArithmeticError):
    """A numerical procedure failed to reach its target accuracy."""


class BracketError(TanhErfError, ValueError):
    """A search bracket does not contain an interior minimum."""


class FitError(TanhErfError, RuntimeError):
    """A nonlinear fit did not converge.

    The best parameters found so far are attached as ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
