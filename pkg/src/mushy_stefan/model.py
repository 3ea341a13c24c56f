"""Physical data of the solidification problem.

Units (documentation only, nothing is unit-checked):

    rho     mass density                         kg/m^3
    k1, k2  thermal conductivity solid / liquid  W/(m C)
    c1, c2  specific heat solid / liquid         J/(kg C)
    l       latent heat                          J/kg
    eps     latent-heat fraction of the mush     -
    gamma   mushy-width coefficient              C
    theta0  initial liquid temperature           C
    Dinf    magnitude of the bulk temperature    C
    h0      heat-transfer coefficient scale      kg/(C s^(5/2))
    D0      magnitude of the imposed temperature C
"""

import math
from dataclasses import asdict, dataclass, field

from mushy_stefan.errors import RangeError


def _positive(obj, *names):
    for name in names:
        v = getattr(obj, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise RangeError(name, f"must be a finite number > 0, got {v!r}")


def _nonnegative(obj, *names):
    for name in names:
        v = getattr(obj, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
            raise RangeError(name, f"must be a finite number >= 0, got {v!r}")


@dataclass(frozen=True)
class MaterialParams:
    rho: float
    k1: float
    k2: float
    c1: float
    c2: float
    l: float  # noqa: E741
    eps: float
    gamma: float
    alpha1: float = field(init=False, repr=False, compare=False)
    alpha2: float = field(init=False, repr=False, compare=False)
    alpha12: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.check()
        object.__setattr__(self, "alpha1", self.k1 / (self.rho * self.c1))
        object.__setattr__(self, "alpha2", self.k2 / (self.rho * self.c2))
        object.__setattr__(self, "alpha12", self.alpha1 / self.alpha2)

    def check(self):
        _positive(self, "rho", "k1", "k2", "c1", "c2", "l")
        if not (isinstance(self.eps, (int, float)) and 0 < self.eps < 1):
            raise RangeError("eps", f"must lie in (0, 1), got {self.eps!r}")
        # gamma = 0 is the classical two-phase problem without mush
        _nonnegative(self, "gamma")

    def to_dict(self):
        d = asdict(self)
        for k in ("alpha1", "alpha2", "alpha12"):
            d.pop(k)
        return d


@dataclass(frozen=True)
class ConvectiveBC:
    theta0: float
    Dinf: float
    h0: float

    def __post_init__(self):
        # theta0 = 0 is the one-phase reduction
        _nonnegative(self, "theta0")
        _positive(self, "Dinf", "h0")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class DirichletBC:
    theta0: float
    D0: float

    def __post_init__(self):
        _nonnegative(self, "theta0")
        _positive(self, "D0")

    def to_dict(self):
        return asdict(self)


def validate(mp):
    """Re-check ``mp`` and return it; derived diffusivities are already set.

    Raises RangeError naming the first offending field.
    """
    mp.check()
    return mp
