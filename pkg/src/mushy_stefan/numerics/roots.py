"""Bracketed scalar root finding."""

import math
import sys
from dataclasses import dataclass

from mushy_stefan.errors import DomainError, NoRoot
from mushy_stefan.numerics import _kernels_py


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"bracket ends must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise DomainError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self):
        return self.hi - self.lo


@dataclass(frozen=True)
class RootConfig:
    abs_tol: float = 1e-14
    rel_tol: float = 4 * sys.float_info.epsilon
    max_iter: int = 200

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol}")
        if not self.rel_tol >= 0:
            raise DomainError(f"rel_tol must be >= 0, got {self.rel_tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")

    def tolerance_at(self, x):
        """Bracket width accepted at termination near ``x``."""
        return self.abs_tol + self.rel_tol * abs(x)


def find_root(f, bracket, cfg=RootConfig()):
    """Root of ``f`` inside ``bracket`` by Brent's method.

    Requires f(lo) * f(hi) <= 0. The returned point lies in the bracket and
    its final enclosing interval is narrower than ``cfg.tolerance_at(root)``.

    Raises BracketError without a sign change, ConvergenceError (carrying
    the last bracket) when ``cfg.max_iter`` is exhausted.
    """
    if not isinstance(bracket, Bracket):
        bracket = Bracket(*bracket)
    root, _ = _kernels_py.brentq(
        f, bracket.lo, bracket.hi, cfg.abs_tol, cfg.rel_tol, cfg.max_iter
    )
    return root


def expand_bracket(f, increasing, start=1e-8, cap=26.0, floor=1e-300):
    """Bracket the unique positive root of a monotone ``f``.

    Walks [a, 2a] upward from ``start`` until the sign flips, or halves
    downward when ``start`` is already past the root. Raises NoRoot when the
    walk reaches ``cap`` (or ``floor``) without a sign change.
    """
    fa = f(start)
    past_root = fa > 0 if increasing else fa < 0
    if fa == 0:
        return Bracket(start / 2, start)
    a = start
    if not past_root:
        while True:
            b = min(2 * a, cap)
            fb = f(b)
            if (fb >= 0) if increasing else (fb <= 0):
                return Bracket(a, b)
            if b >= cap:
                raise NoRoot(f"no sign change on (0, {cap}]")
            a = b
    while a > floor:
        b = a / 2
        fb = f(b)
        if (fb <= 0) if increasing else (fb >= 0):
            return Bracket(b, a)
        a = b
    raise NoRoot(f"no sign change above {floor}")
