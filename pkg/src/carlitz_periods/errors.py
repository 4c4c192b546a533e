"""Exception hierarchy shared by every module of the package."""


class CarlitzError(Exception):
    """Base class; the CLI maps every subclass to exit status 2."""


class DomainError(CarlitzError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EnumerationBoundError(CarlitzError):
    """A brute-force enumeration or exact degree would exceed its cap."""


class PlaceConstructionError(CarlitzError, ValueError):
    """The polynomial given for a place is not monic irreducible."""


class NotPAdicError(DomainError):
    """A rational number is not a p-adic integer (p divides the denominator)."""


class ConvergenceError(CarlitzError, ArithmeticError):
    """The truncated gamma product failed its monotone convergence check."""


class InconsistencyError(CarlitzError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class ParseError(CarlitzError, ValueError):
    """Malformed textual input (polynomials, rationals)."""
