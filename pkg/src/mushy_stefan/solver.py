"""Similarity solutions for the convective and imposed-temperature problems.

Solid:   theta1(x, t) = A1 + B1 erf(x / (2 sqrt(alpha1 t))),  0 < x < s(t)
Mush:    theta = 0,                                           s(t) <= x <= r(t)
Liquid:  theta2(x, t) = A2 + B2 erf(x / (2 sqrt(alpha2 t))),  x > r(t)
Fronts:  s(t) = 2 xi sqrt(alpha1 t),  r(t) = 2 mu sqrt(alpha2 t)
"""

import math
from dataclasses import dataclass
from enum import Enum

from mushy_stefan.errors import ConvergenceError, DomainError, NoRoot, NoSolution
from mushy_stefan.model import ConvectiveBC, DirichletBC, MaterialParams
from mushy_stefan.numerics import RootConfig, expand_bracket, kernels
from mushy_stefan.transcendental import (
    X_CAP,
    ConvectiveFamily,
    DirichletFamily,
    ThresholdReport,
    compute_threshold,
)

SQRT_PI = math.sqrt(math.pi)

#: left end of the bracket for the front parameter
XI_TINY = 1e-10


class Region(str, Enum):
    SOLID = "solid"
    MUSH = "mush"
    LIQUID = "liquid"


@dataclass(frozen=True)
class PointEval:
    x: float
    t: float
    region: Region
    temperature: float


def _check_t(t):
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise DomainError(f"t must be finite and > 0, got {t!r}")
    return t


@dataclass(frozen=True)
class SimilaritySolution:
    """Closed-form solution; ``kind`` is ``"convective"`` or ``"dirichlet"``.

    ``D`` is the bulk temperature magnitude Dinf for the convective kind and
    the imposed magnitude D0 otherwise; ``h0`` is None for the latter.
    """

    xi: float
    mu: float
    A1: float
    B1: float
    A2: float
    B2: float
    alpha1: float
    alpha2: float
    kind: str
    theta0: float
    D: float
    h0: float | None
    mp: MaterialParams
    threshold: ThresholdReport | None = None

    def fronts(self, t):
        """(s(t), r(t))."""
        t = _check_t(t)
        return 2 * self.xi * math.sqrt(self.alpha1 * t), 2 * self.mu * math.sqrt(self.alpha2 * t)

    def front_speeds(self, t):
        """(ds/dt, dr/dt)."""
        t = _check_t(t)
        return self.xi * math.sqrt(self.alpha1 / t), self.mu * math.sqrt(self.alpha2 / t)

    def theta1(self, x, t):
        """Solid-phase closed form (no region check)."""
        return self.A1 + self.B1 * kernels.erf(x / (2 * math.sqrt(self.alpha1 * t)))

    def theta2(self, x, t):
        """Liquid-phase closed form (no region check)."""
        if self.theta0 == 0:
            return 0.0
        eta = x / (2 * math.sqrt(self.alpha2 * t))
        if eta >= self.mu:
            # theta0 (1 - erfc(eta) / erfc(mu)), safe when erfc(mu) underflows
            ratio = math.exp((self.mu - eta) * (self.mu + eta)) * kernels.erfcx(eta) / kernels.erfcx(self.mu)
            return self.theta0 * (1 - ratio)
        return self.A2 + self.B2 * kernels.erf(eta)

    def theta1_x(self, x, t):
        eta = x / (2 * math.sqrt(self.alpha1 * t))
        return self.B1 * math.exp(-eta * eta) / math.sqrt(math.pi * self.alpha1 * t)

    def theta2_x(self, x, t):
        if self.theta0 == 0:
            return 0.0
        eta = x / (2 * math.sqrt(self.alpha2 * t))
        g = math.exp((self.mu - eta) * (self.mu + eta)) / kernels.erfcx(self.mu)
        return self.theta0 * g / math.sqrt(math.pi * self.alpha2 * t)

    def region(self, x, t):
        s, r = self.fronts(t)
        if x < s:
            return Region.SOLID
        if x <= r:
            return Region.MUSH
        return Region.LIQUID

    def evaluate(self, x, t):
        """Temperature and phase at ``(x, t)``; the mush is closed on both sides."""
        x = float(x)
        if not math.isfinite(x) or x < 0:
            raise DomainError(f"x must be finite and >= 0, got {x!r}")
        t = _check_t(t)
        region = self.region(x, t)
        if region is Region.SOLID:
            temp = self.theta1(x, t)
        elif region is Region.LIQUID:
            temp = self.theta2(x, t)
        else:
            temp = 0.0
        return PointEval(x, t, region, temp)

    def to_dict(self):
        d = {
            "kind": self.kind,
            "xi": self.xi,
            "mu": self.mu,
            "A1": self.A1,
            "B1": self.B1,
            "A2": self.A2,
            "B2": self.B2,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "theta0": self.theta0,
            "D": self.D,
            "h0": self.h0,
            "material": self.mp.to_dict(),
        }
        if self.threshold is not None:
            d["threshold"] = self.threshold.to_dict()
        return d

    @classmethod
    def from_dict(cls, d):
        def num(v):
            return math.nan if v is None else float(v)

        thr = d.get("threshold")
        if thr is not None:
            thr = ThresholdReport(**{k: (num(v) if k not in ("solvable", "regime") else v) for k, v in thr.items()})
        return cls(
            xi=num(d["xi"]),
            mu=num(d["mu"]),
            A1=num(d["A1"]),
            B1=num(d["B1"]),
            A2=num(d["A2"]),
            B2=num(d["B2"]),
            alpha1=num(d["alpha1"]),
            alpha2=num(d["alpha2"]),
            kind=d["kind"],
            theta0=num(d["theta0"]),
            D=num(d["D"]),
            h0=None if d.get("h0") is None else float(d["h0"]),
            mp=MaterialParams(**d["material"]),
            threshold=thr,
        )


def _solve_front(fam, cfg):
    f = fam._raw_residual
    try:
        bracket = expand_bracket(f, increasing=False, start=XI_TINY, cap=X_CAP)
    except NoRoot as exc:
        raise ConvergenceError(f"could not bracket the front parameter: {exc}") from exc
    return kernels.solve_residual(
        bracket.lo, bracket.hi, *fam._args, fam.lat, cfg.abs_tol, cfg.rel_tol, cfg.max_iter
    )


def _liquid_coefficients(theta0, mu):
    if theta0 == 0:
        return 0.0, 0.0
    ec = kernels.erfc(mu)
    if ec == 0:
        return -math.inf, math.inf
    return -theta0 * kernels.erf(mu) / ec, theta0 / ec


def solve_convective(mp, bc, cfg=RootConfig()):
    """Similarity solution under the convective condition.

    Raises NoSolution (carrying the ThresholdReport) when h0 <= h0_star.
    """
    if not isinstance(bc, ConvectiveBC):
        raise DomainError("solve_convective needs a ConvectiveBC")
    report = compute_threshold(mp, bc, cfg)
    if not report.solvable:
        raise NoSolution(
            f"no similarity solution: h0 = {bc.h0!r} <= h0_star = {report.h0_star!r}", report
        )
    fam = ConvectiveFamily(mp, bc)
    xi = _solve_front(fam, cfg)
    e = kernels.erf(xi)
    mu = fam.sqrt_a12 * fam.W(xi)
    A2, B2 = _liquid_coefficients(bc.theta0, mu)
    return SimilaritySolution(
        xi=xi,
        mu=mu,
        A1=-bc.Dinf * e / (e + fam.kappa),
        B1=bc.Dinf / (e + fam.kappa),
        A2=A2,
        B2=B2,
        alpha1=mp.alpha1,
        alpha2=mp.alpha2,
        kind="convective",
        theta0=bc.theta0,
        D=bc.Dinf,
        h0=bc.h0,
        mp=mp,
        threshold=report,
    )


def solve_dirichlet(mp, bc, cfg=RootConfig()):
    """Similarity solution under the imposed temperature theta1(0, t) = -D0."""
    if not isinstance(bc, DirichletBC):
        raise DomainError("solve_dirichlet needs a DirichletBC")
    fam = DirichletFamily(mp, bc)
    xi = _solve_front(fam, cfg)
    mu = fam.sqrt_a12 * fam.W(xi)
    A2, B2 = _liquid_coefficients(bc.theta0, mu)
    return SimilaritySolution(
        xi=xi,
        mu=mu,
        A1=-bc.D0,
        B1=bc.D0 / kernels.erf(xi),
        A2=A2,
        B2=B2,
        alpha1=mp.alpha1,
        alpha2=mp.alpha2,
        kind="dirichlet",
        theta0=bc.theta0,
        D=bc.D0,
        h0=None,
        mp=mp,
    )


def family_for(sol):
    """The function family a solution was solved from."""
    if sol.kind == "convective":
        return ConvectiveFamily(sol.mp, ConvectiveBC(sol.theta0, sol.D, sol.h0))
    return DirichletFamily(sol.mp, DirichletBC(sol.theta0, sol.D))

