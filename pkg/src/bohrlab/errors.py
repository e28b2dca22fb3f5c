"""Exception hierarchy shared by every module."""


class BohrLabError(Exception):
    """Base class for all errors raised by bohrlab."""


class DomainError(BohrLabError, ValueError):
    """An argument lies outside the domain of the operation (e.g. ``|z| >= 1``)."""


class InsufficientOrderError(BohrLabError, ValueError):
    """A derivative or coefficient beyond the stored truncation order was requested."""


class OutOfRangeError(DomainError):
    """A lemma was invoked outside the radius range on which it is stated."""


class DegenerateAreaError(DomainError):
    """``S_r / pi >= 1`` so the ratio ``S_r / (pi - S_r)`` is undefined."""


class BracketError(BohrLabError, ValueError):
    """The root bracket does not contain a sign change."""


class ConvergenceError(BohrLabError, RuntimeError):
    """Bisection hit its iteration cap before reaching the tolerance."""


class InvalidMError(DomainError):
    """The harmonic-class parameter M violates the validity condition of the radius theorem."""


class TableMismatchError(BohrLabError):
    """Reproduced table cells disagree with the printed values."""

    def __init__(self, cells):
        self.cells = list(cells)
        names = ", ".join(f"{c.family}({c.M})" for c in self.cells)
        super().__init__(f"{len(self.cells)} table cell(s) out of tolerance: {names}")
