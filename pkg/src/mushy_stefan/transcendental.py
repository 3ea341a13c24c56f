"""Scalar function families behind the similarity solution, and thresholds.

Every family is parameterised by a boundary temperature magnitude ``D`` and
an additive term ``kappa`` next to erf: ``kappa = k1 / (h0 sqrt(pi alpha1))``
for the convective condition and ``kappa = 0`` for an imposed temperature.
With that, all of them share

    W(x)  = x + gamma sqrt(pi) / (2 D) exp(x^2) (erf(x) + kappa)
    G(x)  = x + (1 - eps) gamma sqrt(pi) / (2 D) exp(x^2) (erf(x) + kappa)
    F1(x) = exp(-x^2) / (erf(x) + kappa)
    F2(y) = exp(-y^2) / erfc(y)
    F(x)  = F1(x) - theta0 sqrt(k2 c2) / (D sqrt(k1 c1)) F2(sqrt(alpha12) W(x))

and the front parameter solves F(x) = l sqrt(pi) / (D c1) G(x).
"""

import math
import sys
from dataclasses import asdict, dataclass

from mushy_stefan.errors import DomainError, RangeError
from mushy_stefan.model import ConvectiveBC, DirichletBC, validate
from mushy_stefan.numerics import RootConfig, expand_bracket, find_root, kernels

SQRT_PI = math.sqrt(math.pi)

#: exp(x^2) overflows a double just above 26.6
X_CAP = 26.0

#: relative margin added to the minimal h1_star witness
H1_MARGIN = 1e-9


def _check_x(x):
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"argument must be finite and > 0, got {x!r}")
    if x > X_CAP:
        raise RangeError("x", f"{x} exceeds the overflow cap {X_CAP}")
    return x


def F2(y):
    """exp(-y^2) / erfc(y) for y > 0; evaluated as 1 / erfcx(y)."""
    y = float(y)
    if not math.isfinite(y) or y <= 0:
        raise DomainError(f"F2 needs a finite y > 0, got {y!r}")
    return kernels.f2(y)


class _Family:
    def __init__(self, mp, theta0, D, kappa):
        self.mp = validate(mp)
        self.theta0 = theta0
        self.D = D
        self.kappa = kappa
        self.sqrt_a12 = math.sqrt(mp.alpha12)
        self.pref = theta0 * math.sqrt(mp.k2 * mp.c2) / (D * math.sqrt(mp.k1 * mp.c1))
        self.lat = mp.l * SQRT_PI / (D * mp.c1)
        self._args = (D, kappa, mp.gamma, mp.eps, self.pref, self.sqrt_a12)

    def values(self, x):
        """(W, F1, F2(sqrt(alpha12) W), F, G) at ``x``."""
        return kernels.family(_check_x(x), *self._args)

    def values_grid(self, xs):
        xs = [_check_x(x) for x in xs]
        return kernels.family_grid(xs, *self._args)

    def W(self, x):
        return self.values(x)[0]

    def F1(self, x):
        return self.values(x)[1]

    def F(self, x):
        return self.values(x)[3]

    def G(self, x):
        return self.values(x)[4]

    def J(self, x):
        v = self.values(x)
        return v[3] / v[4]

    def H(self, x):
        v = self.values(x)
        return v[4] / v[1]

    def residual(self, x):
        """F(x) - l sqrt(pi) / (D c1) G(x)."""
        return kernels.residual(_check_x(x), *self._args, self.lat)

    def residual_grid(self, xs):
        xs = [_check_x(x) for x in xs]
        return kernels.residual_grid(xs, *self._args, self.lat)

    def residual_scale(self, x):
        """Largest magnitude among the terms of the residual at ``x``."""
        _, F1, F2W, _, G = self.values(x)
        return max(1.0, abs(F1), abs(self.pref * F2W), abs(self.lat * G))

    def _raw_residual(self, x):
        return kernels.residual(x, *self._args, self.lat)

    def _raw_F(self, x):
        return kernels.family(x, *self._args)[3]


class ConvectiveFamily(_Family):
    """Families W, F1, F, G, J, H for the convective condition."""

    def __init__(self, mp, bc):
        if not isinstance(bc, ConvectiveBC):
            raise DomainError("ConvectiveFamily needs a ConvectiveBC")
        self.bc = bc
        self.h0 = bc.h0
        kappa = mp.k1 / (bc.h0 * math.sqrt(math.pi * mp.alpha1))
        super().__init__(mp, bc.theta0, bc.Dinf, kappa)


class DirichletFamily(_Family):
    """W0, F0, G0 for an imposed boundary temperature -D0."""

    def __init__(self, mp, bc):
        if not isinstance(bc, DirichletBC):
            raise DomainError("DirichletFamily needs a DirichletBC")
        self.bc = bc
        super().__init__(mp, bc.theta0, bc.D0, 0.0)

    def W0(self, x):
        return self.W(x)

    def F0(self, x):
        return self.F(x)

    def G0(self, x):
        return self.G(x)


class LimitFamily(DirichletFamily):
    """The h0 -> infinity limit: the imposed-temperature family with D0 = Dinf."""

    def __init__(self, mp, theta0, Dinf):
        super().__init__(mp, DirichletBC(theta0, Dinf))
        self.Dinf = Dinf


def eval_dirichlet_family(fam, x):
    """(W0, F0, G0) at ``x``."""
    W, _, _, F, G = fam.values(x)
    return W, F, G


def eval_F3(theta0, k2, c2, gamma, k1, l, eps, x):  # noqa: E741
    """F2(x) - gamma k1 sqrt(pi) / (2 theta0 k2 x) + (1 - eps) l sqrt(pi) x / (theta0 c2)."""
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"argument must be finite and > 0, got {x!r}")
    if theta0 <= 0:
        raise DomainError("F3 is undefined for theta0 = 0")
    return (
        kernels.f2(x)
        - gamma * k1 * SQRT_PI / (2 * theta0 * k2) / x
        + (1 - eps) * l * SQRT_PI / (theta0 * c2) * x
    )


@dataclass(frozen=True)
class ThresholdReport:
    """Solvability diagnostics for the convective problem.

    ``regime`` is ``"mushy"`` in the general case (eta is the root of F3),
    ``"one-phase"`` for theta0 = 0, ``"classical"`` for gamma = 0 and
    ``"classical-one-phase"`` when both vanish. eta is NaN when it does not
    exist (gamma = 0); zeta is infinite for theta0 = 0.
    """

    eta: float
    h0_star: float
    zeta: float
    h1_star: float
    solvable: bool
    regime: str

    def to_dict(self):
        return asdict(self)


def find_eta(theta0, k2, c2, gamma, k1, l, eps, cfg=RootConfig()):  # noqa: E741
    """Unique positive root of F3; NoRoot when there is none (gamma = 0)."""

    def f(x):
        return eval_F3(theta0, k2, c2, gamma, k1, l, eps, x)

    # F2 is overflow-free, so the search may go far past X_CAP
    bracket = expand_bracket(f, increasing=True, start=1e-8, cap=1e150)
    # eta shrinks with gamma; keep the tolerance relative so h0_star stays accurate
    tol = min(cfg.abs_tol, max(cfg.rel_tol, 4 * sys.float_info.epsilon) * bracket.lo)
    return find_root(f, bracket, RootConfig(tol, cfg.rel_tol, cfg.max_iter))


def compute_threshold(mp, bc, cfg=RootConfig()):
    """h0_star, eta, zeta and h1_star for ``(mp, bc)``; solvable iff h0 > h0_star."""
    mp = validate(mp)
    theta0, Dinf = bc.theta0, bc.Dinf
    gamma = mp.gamma
    c = gamma * mp.k1 / (2 * Dinf * math.sqrt(mp.alpha2))
    sqrt_rkc = math.sqrt(mp.rho * mp.k2 * mp.c2)
    zeta = Dinf * SQRT_PI / (theta0 * sqrt_rkc) if theta0 > 0 else math.inf

    if gamma > 0 and theta0 > 0:
        regime = "mushy"
        eta = find_eta(theta0, mp.k2, mp.c2, gamma, mp.k1, mp.l, mp.eps, cfg)
        h0_star = c / eta
    elif gamma > 0:
        # theta0 * F3 keeps its root as theta0 -> 0
        regime = "one-phase"
        eta = math.sqrt(gamma * mp.k1 * mp.c2 / (2 * mp.k2 * (1 - mp.eps) * mp.l))
        h0_star = c / eta
    elif theta0 > 0:
        # F(0+) = h0 sqrt(pi alpha1) / k1 - prefactor > 0
        regime = "classical"
        eta = math.nan
        h0_star = 1 / zeta
    else:
        regime = "classical-one-phase"
        eta = math.nan
        h0_star = 0.0

    h1_root = _h1_root(c, zeta, h0_star, cfg) if theta0 > 0 else 0.0
    h1_star = max(h0_star, h1_root * (1 + H1_MARGIN))
    return ThresholdReport(
        eta=eta,
        h0_star=h0_star,
        zeta=zeta,
        h1_star=h1_star,
        solvable=bc.h0 > h0_star,
        regime=regime,
    )


def _h1_root(c, zeta, start, cfg):
    # (1/h) F2(c/h) decreases from +inf to 0 in h
    def g(h):
        return kernels.f2(c / h) / h - zeta

    start = start if start > 0 else 1.0
    bracket = expand_bracket(g, increasing=False, start=start, cap=1e300)
    return find_root(g, bracket, cfg)


def find_nu(fam, cfg=RootConfig()):
    """Unique positive root of F (equivalently of J = F / G).

    Raises NoRoot when F has no sign change on (0, X_CAP].
    """
    bracket = expand_bracket(fam._raw_F, increasing=False, start=1e-8, cap=X_CAP)
    return find_root(fam._raw_F, bracket, cfg)
