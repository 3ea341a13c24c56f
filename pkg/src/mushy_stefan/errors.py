"""Exception hierarchy shared by every module of the package."""


class MushyStefanError(Exception):
    """Base class for all package errors."""


class DomainError(MushyStefanError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(DomainError):
    """A parameter or argument violates a range constraint.

    ``field`` names the offending parameter when there is one.
    """

    def __init__(self, field, message=None):
        self.field = field
        super().__init__(f"{field}: {message}" if message else field)


class BracketError(MushyStefanError):
    """The function has no sign change on the supplied bracket."""


class ConvergenceError(MushyStefanError):
    """Iteration limit hit; ``bracket`` holds the last enclosing interval."""

    def __init__(self, message, bracket=None):
        self.bracket = bracket
        super().__init__(message)


class NoRoot(MushyStefanError):
    """No sign change found before the search cap."""


class NoSolution(MushyStefanError):
    """The convective problem has no similarity solution (h0 <= h0_star)."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ThresholdBypassed(MushyStefanError):
    """The threshold quantity is undefined for this reduction (gamma=0 or theta0=0)."""


class StencilCrossesFront(DomainError):
    """A finite-difference stencil leaves the phase it was placed in."""
