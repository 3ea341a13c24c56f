"""Behaviour of the convective solution as h0 grows.

The h0 -> infinity limit is the imposed-temperature solution with D0 = Dinf.
``sweep_h0`` measures how far each convective solution on a ladder of h0
values is from that limit; ``estimate_rates`` fits the decay exponents.
"""

import math
from dataclasses import asdict, dataclass

from mushy_stefan.errors import DomainError, NoSolution
from mushy_stefan.model import ConvectiveBC, DirichletBC
from mushy_stefan.numerics import RootConfig, fit_loglog_slope
from mushy_stefan.solver import solve_convective, solve_dirichlet
from mushy_stefan.transcendental import ConvectiveFamily, LimitFamily, compute_threshold, find_nu

PROBE_TIMES = (0.5, 1.0, 2.0)
SOLID_PROBES = (0.25, 0.5)
LIQUID_PROBES = (1.5, 3.0)

GAP_FIELDS = ("xi_gap", "mu_gap", "theta1_gap", "theta2_gap", "s_gap", "r_gap")


@dataclass(frozen=True)
class SweepRecord:
    """Distances of the h0 solution from the limit solution.

    ``xi_gap`` is the signed xi_inf - xi; the other gaps are absolute values,
    maximised over the probe set. ``skipped`` entries (h0 <= h0_star) carry NaN.
    """

    h0: float
    xi: float
    mu: float
    xi_gap: float
    mu_gap: float
    theta1_gap: float
    theta2_gap: float
    s_gap: float
    r_gap: float
    skipped: bool = False

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class RateReport:
    """Log-log slopes of each gap against h0 (-1 means O(1/h0))."""

    slope_xi: float
    slope_mu: float
    slope_theta1: float
    slope_theta2: float
    slope_s: float
    slope_r: float
    h0_range: tuple
    n_points: int

    @property
    def slopes(self):
        return (self.slope_xi, self.slope_mu, self.slope_theta1,
                self.slope_theta2, self.slope_s, self.slope_r)

    def within(self, lo=-1.1, hi=-0.9):
        return all(lo <= s <= hi for s in self.slopes)

    def to_dict(self):
        d = asdict(self)
        d["h0_range"] = list(self.h0_range)
        return d


def default_probes():
    """(kind, fraction, t) triples: fractions of s_inf(t) or r_inf(t)."""
    out = [("solid", f, t) for t in PROBE_TIMES for f in SOLID_PROBES]
    out += [("liquid", f, t) for t in PROBE_TIMES for f in LIQUID_PROBES]
    return out


def limit_solution(mp, theta0, Dinf, cfg=RootConfig()):
    return solve_dirichlet(mp, DirichletBC(theta0, Dinf), cfg)


def _skipped(h0):
    nan = math.nan
    return SweepRecord(h0, nan, nan, nan, nan, nan, nan, nan, nan, skipped=True)


def sweep_h0(mp, theta0, Dinf, h0_ladder, probes=None, cfg=RootConfig(), log=None):
    """One record per ladder entry; entries at or below h0_star are marked skipped.

    ``log`` (optional callable) receives a message for every skipped entry.
    """
    ladder = [float(h) for h in h0_ladder]
    if not ladder:
        raise DomainError("empty h0 ladder")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("h0 ladder must be strictly increasing")
    probes = default_probes() if probes is None else probes
    lim = limit_solution(mp, theta0, Dinf, cfg)

    records = []
    for h0 in ladder:
        try:
            sol = solve_convective(mp, ConvectiveBC(theta0, Dinf, h0), cfg)
        except NoSolution as exc:
            if log is not None:
                log(f"h0 = {h0!r} skipped: {exc}")
            records.append(_skipped(h0))
            continue
        g1 = g2 = 0.0
        for kind, frac, t in probes:
            s_inf, r_inf = lim.fronts(t)
            if kind == "solid":
                x = frac * s_inf
                g1 = max(g1, abs(sol.evaluate(x, t).temperature - lim.evaluate(x, t).temperature))
            else:
                x = frac * r_inf
                g2 = max(g2, abs(sol.evaluate(x, t).temperature - lim.evaluate(x, t).temperature))
        s_gap = r_gap = 0.0
        for t in sorted({p[2] for p in probes}) or [1.0]:
            s, r = sol.fronts(t)
            s_inf, r_inf = lim.fronts(t)
            s_gap = max(s_gap, abs(s_inf - s))
            r_gap = max(r_gap, abs(r - r_inf))
        records.append(
            SweepRecord(
                h0=h0,
                xi=sol.xi,
                mu=sol.mu,
                xi_gap=lim.xi - sol.xi,
                mu_gap=abs(sol.mu - lim.mu),
                theta1_gap=g1,
                theta2_gap=g2,
                s_gap=s_gap,
                r_gap=r_gap,
            )
        )
    return records


def estimate_rates(records, top_fraction=0.5):
    """Fit every gap against h0 over the largest ``top_fraction`` of valid records.

    The fitted subset needs at least 4 points spanning at least 2 decades.
    A zero gap (e.g. theta2 when theta0 = 0) yields a NaN slope.
    """
    if not 0 < top_fraction <= 1:
        raise DomainError(f"top_fraction must lie in (0, 1], got {top_fraction!r}")
    valid = sorted((r for r in records if not r.skipped), key=lambda r: r.h0)
    n = math.ceil(len(valid) * top_fraction)
    used = valid[len(valid) - n:]
    if len(used) < 4:
        raise DomainError(f"need at least 4 valid records to fit, got {len(used)}")
    lo, hi = used[0].h0, used[-1].h0
    if math.log10(hi / lo) < 2 - 1e-9:
        raise DomainError(f"fitted records must span 2 decades of h0, got [{lo}, {hi}]")

    def slope(name):
        pairs = [(r.h0, abs(getattr(r, name))) for r in used]
        if any(g == 0 for _, g in pairs):
            return math.nan
        return fit_loglog_slope(pairs)

    return RateReport(*(slope(f) for f in GAP_FIELDS), h0_range=(lo, hi), n_points=len(used))


def check_J_ordering(mp, theta0, Dinf, h_pair, xs, cfg=RootConfig()):
    """True iff J_{h'}(x) < J_{h''}(x) < J_inf(x) at every x in ``xs``.

    Needs h1_star <= h' < h'' and every x in (0, nu_{h'}).
    """
    h1, h2 = (float(h) for h in h_pair)
    if not h1 < h2:
        raise DomainError(f"need h' < h'', got {h_pair!r}")
    report = compute_threshold(mp, ConvectiveBC(theta0, Dinf, h1), cfg)
    if h1 < report.h1_star:
        raise DomainError(f"h' = {h1!r} is below h1_star = {report.h1_star!r}")
    f1 = ConvectiveFamily(mp, ConvectiveBC(theta0, Dinf, h1))
    f2 = ConvectiveFamily(mp, ConvectiveBC(theta0, Dinf, h2))
    finf = LimitFamily(mp, theta0, Dinf)
    nu = find_nu(f1, cfg)
    xs = [float(x) for x in xs]
    for x in xs:
        if not 0 < x < nu:
            raise DomainError(f"x = {x!r} lies outside (0, nu = {nu!r})")
    return all(f1.J(x) < f2.J(x) < finf.J(x) for x in xs)
