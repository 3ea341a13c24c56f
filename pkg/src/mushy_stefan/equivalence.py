"""Maps between the convective problem and the imposed-temperature problem.

A convective solution with (Dinf, h0) coincides with the imposed-temperature
solution for

    D0 = Dinf erf(xi) / (erf(xi) + k1 / (h0 sqrt(pi alpha1)))

and, conversely, an imposed-temperature solution with D0 < Dinf coincides
with the convective one for

    h0 = k1 D0 / (sqrt(pi alpha1) (Dinf - D0) erf(xi_star)).
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from mushy_stefan.errors import DomainError, ThresholdBypassed
from mushy_stefan.model import ConvectiveBC, DirichletBC, validate
from mushy_stefan.numerics import RootConfig, kernels
from mushy_stefan.solver import solve_convective, solve_dirichlet
from mushy_stefan.transcendental import find_eta

GRID = 20


@dataclass(frozen=True)
class EquivalenceRecord:
    """One application of a map; ``source`` is ``"convective"`` or ``"dirichlet"``.

    ``bound_lhs`` / ``bound_rhs`` hold erf(xi_star) and the right side of
    the inequality the map must respect (NaN when gamma = 0 or theta0 = 0).
    """

    source: str
    D0: float
    h0: float
    Dinf: float
    xi_source: float
    xi_target: float
    mu_source: float
    mu_target: float
    max_profile_gap: float
    bound_lhs: float
    bound_rhs: float
    bound_holds: bool

    @property
    def xi_gap(self):
        return abs(self.xi_source - self.xi_target)

    def to_dict(self):
        d = asdict(self)
        d["xi_gap"] = self.xi_gap
        return d


def profile_gap(a, b, n=GRID):
    """Largest |theta_a - theta_b| on an n x n grid over both phases.

    Times span [0.5, 2]; positions span [0, 2 r(t)] of solution ``a``.
    """
    gap = 0.0
    for t in np.linspace(0.5, 2.0, n):
        _, r = a.fronts(t)
        for x in np.linspace(0.0, 2 * r, n):
            gap = max(gap, abs(a.evaluate(x, t).temperature - b.evaluate(x, t).temperature))
    return gap


def _eta(mp, theta0, cfg):
    return find_eta(theta0, mp.k2, mp.c2, mp.gamma, mp.k1, mp.l, mp.eps, cfg)


def convective_to_dirichlet(mp, bc, cfg=RootConfig()):
    """Solve the convective problem, map to D0 and solve the imposed-temperature one."""
    conv = solve_convective(mp, bc, cfg)
    e = kernels.erf(conv.xi)
    kappa = mp.k1 / (bc.h0 * math.sqrt(math.pi * mp.alpha1))
    D0 = bc.Dinf * e / (e + kappa)
    dbc = DirichletBC(bc.theta0, D0)
    dir_ = solve_dirichlet(mp, dbc, cfg)
    lhs = rhs = math.nan
    holds = True
    if mp.gamma > 0 and bc.theta0 > 0:
        lhs, rhs, holds = check_xi_star_bound(mp, dbc, cfg, xi_star=dir_.xi)
    return EquivalenceRecord(
        source="convective",
        D0=D0,
        h0=bc.h0,
        Dinf=bc.Dinf,
        xi_source=conv.xi,
        xi_target=dir_.xi,
        mu_source=conv.mu,
        mu_target=dir_.mu,
        max_profile_gap=profile_gap(conv, dir_),
        bound_lhs=lhs,
        bound_rhs=rhs,
        bound_holds=holds,
    )


def mapped_h0(mp, D0, Dinf, xi_star):
    """Heat-transfer scale making the convective problem reproduce ``xi_star``."""
    if not Dinf > D0:
        raise DomainError(f"Dinf must exceed D0, got Dinf={Dinf!r}, D0={D0!r}")
    return mp.k1 * D0 / (math.sqrt(math.pi * mp.alpha1) * (Dinf - D0) * kernels.erf(xi_star))


def dirichlet_to_convective(mp, bc, Dinf, cfg=RootConfig()):
    """Solve the imposed-temperature problem, map to h0 and solve the convective one.

    The record's bound is erf(xi_star) < 2 Dinf D0 eta / (gamma (Dinf - D0) sqrt(pi alpha12)),
    which is the mapped h0 exceeding the solvability threshold.
    """
    validate(mp)
    if not Dinf > bc.D0:
        raise DomainError(f"Dinf must exceed D0, got Dinf={Dinf!r}, D0={bc.D0!r}")
    dir_ = solve_dirichlet(mp, bc, cfg)
    h0 = mapped_h0(mp, bc.D0, Dinf, dir_.xi)
    conv = solve_convective(mp, ConvectiveBC(bc.theta0, Dinf, h0), cfg)
    lhs = rhs = math.nan
    holds = True
    if mp.gamma > 0 and bc.theta0 > 0:
        eta = _eta(mp, bc.theta0, cfg)
        lhs = kernels.erf(dir_.xi)
        rhs = 2 * Dinf * bc.D0 * eta / (mp.gamma * (Dinf - bc.D0) * math.sqrt(math.pi * mp.alpha12))
        holds = lhs < rhs and lhs < 1
    return EquivalenceRecord(
        source="dirichlet",
        D0=bc.D0,
        h0=h0,
        Dinf=Dinf,
        xi_source=dir_.xi,
        xi_target=conv.xi,
        mu_source=dir_.mu,
        mu_target=conv.mu,
        max_profile_gap=profile_gap(dir_, conv),
        bound_lhs=lhs,
        bound_rhs=rhs,
        bound_holds=holds,
    )


def check_xi_star_bound(mp, bc, cfg=RootConfig(), xi_star=None):
    """(erf(xi_star), min{1, 2 D0 eta / (gamma sqrt(pi alpha12))}, holds)."""
    validate(mp)
    if mp.gamma == 0 or bc.theta0 == 0:
        raise ThresholdBypassed("the bound needs gamma > 0 and theta0 > 0")
    if xi_star is None:
        xi_star = solve_dirichlet(mp, bc, cfg).xi
    eta = _eta(mp, bc.theta0, cfg)
    lhs = kernels.erf(xi_star)
    rhs = min(1.0, 2 * bc.D0 * eta / (mp.gamma * math.sqrt(math.pi * mp.alpha12)))
    return lhs, rhs, lhs <= rhs + 1e-12
