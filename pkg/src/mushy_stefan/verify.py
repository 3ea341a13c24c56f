"""Independent certification of a similarity solution.

The heat equations are checked with finite differences (their order is
confirmed on a three-level step ladder); the interface and boundary
conditions are checked with the analytic derivatives of the closed forms.
"""

import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from mushy_stefan.errors import DomainError, StencilCrossesFront
from mushy_stefan.numerics import fit_loglog_slope, kernels
from mushy_stefan.solver import Region

EPS = sys.float_info.epsilon

#: step ladder, as fractions of the local diffusion length 2 sqrt(alpha t)
ORDER_LADDER = (1e-2, 5e-3, 2.5e-3)

#: far-field probe distance in diffusion lengths sqrt(alpha2 t) past r(t)
FAR_FIELD = 40.0


@dataclass(frozen=True)
class ResidualReport:
    """Maxima of the residuals over the sample grid.

    Condition residuals are relative: temperatures are divided by
    max(D, theta0), fluxes by the largest term of their balance. The PDE
    fields are raw |alpha u_xx - u_t| values; ``pde_bound_ratio`` is the
    largest ratio of a PDE residual to its Taylor-remainder + roundoff
    bound (<= 1 certifies the heat equations at the sampled points).
    """

    pde_solid_max: float
    pde_liquid_max: float
    stefan_max: float
    width_max: float
    flux_bc_max: float
    interface_temp_max: float
    far_field_gap: float
    fd_order_slope: float
    pde_bound_ratio: float
    pde_points: int

    def to_dict(self):
        return asdict(self)


def heat_stencil_residual(u, alpha, x, t, h):
    """|alpha D2x u - Dt u| from central differences, time step h^2 / (4 alpha)."""
    dt = h * h / (4 * alpha)
    if t - dt <= 0:
        raise DomainError(f"time stencil leaves t > 0: t={t}, dt={dt}")
    uxx = (u(x + h, t) - 2 * u(x, t) + u(x - h, t)) / (h * h)
    ut = (u(x, t + dt) - u(x, t - dt)) / (2 * dt)
    return abs(alpha * uxx - ut)


def _stencil_region(sol, x, t, h):
    """Region the whole stencil lies in, else StencilCrossesFront."""
    region = sol.region(x, t)
    if region is Region.MUSH:
        raise StencilCrossesFront(f"x={x} lies in the mushy region at t={t}")
    alpha = sol.alpha1 if region is Region.SOLID else sol.alpha2
    dt = h * h / (4 * alpha)
    if t - dt <= 0:
        raise DomainError(f"time stencil leaves t > 0: t={t}, dt={dt}")
    lo, hi = x - 2 * h, x + 2 * h
    for tt in (t - dt, t, t + dt):
        for front in sol.fronts(tt):
            if lo <= front <= hi:
                raise StencilCrossesFront(f"[{lo}, {hi}] contains a front at t={tt}")
    return region, alpha


def pde_residual(sol, x, t, h):
    """Finite-difference heat-equation residual of ``sol`` at ``(x, t)``, step ``h``."""
    if not h > 0:
        raise DomainError(f"h must be > 0, got {h}")
    region, alpha = _stencil_region(sol, x, t, h)
    u = sol.theta1 if region is Region.SOLID else sol.theta2
    return heat_stencil_residual(u, alpha, x, t, h)


def _hermite(n, z):
    # physicists' Hermite polynomials H3, H5
    if n == 3:
        return 8 * z**3 - 12 * z
    return 32 * z**5 - 160 * z**3 + 120 * z


def _gauss_amplitude(sol, region, eta):
    """B exp(-eta^2) of the profile in ``region``."""
    if region is Region.SOLID:
        return sol.B1 * math.exp(-eta * eta)
    if sol.theta0 == 0:
        return 0.0
    return sol.theta0 * math.exp((sol.mu - eta) * (sol.mu + eta)) / kernels.erfcx(sol.mu)


def _derivative_bound(sol, region, x, t, h, n):
    """max |d^(n+1)/dx^(n+1) u| over [x - h, x + h]; n is the Hermite order."""
    alpha = sol.alpha1 if region is Region.SOLID else sol.alpha2
    L = 2 * math.sqrt(alpha * t)
    best = 0.0
    for xx in np.linspace(x - h, x + h, 9):
        eta = xx / L
        amp = abs(_gauss_amplitude(sol, region, eta) * _hermite(n, eta))
        best = max(best, amp)
    return 2 / math.sqrt(math.pi) * best / L ** (n + 1)


def pde_bound(sol, x, t, h):
    """Taylor remainder plus roundoff bound for :func:`pde_residual`."""
    region, alpha = _stencil_region(sol, x, t, h)
    d4 = _derivative_bound(sol, region, x, t, h, 3)
    d6 = _derivative_bound(sol, region, x, t, 2 * h, 5)
    u = sol.theta1 if region is Region.SOLID else sol.theta2
    umax = max(abs(u(x + k * h, t)) for k in (-1, 0, 1))
    truncation = 1.1 * alpha * h * h / 12 * d4 + 2 * alpha * h**4 * d6 * (1 / 360 + 1 / 96)
    roundoff = 64 * EPS * umax * alpha / (h * h)
    return truncation + roundoff


def _order_candidates(sol, t):
    """Probe points (signal, x, L) for the order check, best first."""
    out = []
    top = ORDER_LADDER[0]
    L1 = 2 * math.sqrt(sol.alpha1 * t)
    s, r = sol.fronts(t)
    for f in np.linspace(0.05, 0.95, 19):
        x = f * s
        h = top * L1
        if x + 3 * h < s:
            eta = x / L1
            signal = abs(_gauss_amplitude(sol, Region.SOLID, eta) * _hermite(3, eta))
            out.append((signal / max(abs(sol.A1), abs(sol.B1)), x, L1))
    if sol.theta0 > 0:
        L2 = 2 * math.sqrt(sol.alpha2 * t)
        for d in np.linspace(0.05, 3.0, 60):
            x = r + d * L2
            eta = x / L2
            signal = abs(_gauss_amplitude(sol, Region.LIQUID, eta) * _hermite(3, eta))
            out.append((signal / sol.theta0, x, L2))
    out.sort(key=lambda c: -c[0])
    return out


def fd_order_slope(sol, t=1.0, x=None, ladder=ORDER_LADDER):
    """Observed order of the FD residual on the step ladder.

    Without ``x`` the probe is the admissible point with the largest
    leading truncation term, so the slope is not polluted by roundoff.
    """
    if x is None:
        cands = _order_candidates(sol, t)
        if not cands:
            return math.nan
        _, x, L = cands[0]
    else:
        region = sol.region(x, t)
        L = 2 * math.sqrt((sol.alpha1 if region is Region.SOLID else sol.alpha2) * t)
    pairs = [(c * L, pde_residual(sol, x, t, c * L)) for c in ladder]
    if any(p[1] == 0 for p in pairs):
        return math.nan
    return fit_loglog_slope(pairs)


def _t_samples(nt):
    return [0.5 * 4 ** (k / (nt - 1)) for k in range(nt)]


def certify(sol, grid=(8, 8), h=1e-3):
    """Residual report for ``sol``.

    ``grid = (nx, nt)``: nx points per phase at each of nt times in [0.5, 2].
    ``h`` is the FD step as a fraction of the local diffusion length;
    points whose stencil would touch a front are skipped.
    """
    nx, nt = grid
    if nx < 2 or nt < 2:
        raise DomainError(f"grid needs nx, nt >= 2, got {grid}")
    if not h > 0:
        raise DomainError(f"h must be > 0, got {h}")
    mp = sol.mp
    temp_scale = max(sol.D, sol.theta0)
    pde = {Region.SOLID: 0.0, Region.LIQUID: 0.0}
    ratio = 0.0
    points = 0
    stefan = width = flux = iface = far = 0.0
    for t in _t_samples(nt):
        s, r = sol.fronts(t)
        L1 = 2 * math.sqrt(sol.alpha1 * t)
        L2 = 2 * math.sqrt(sol.alpha2 * t)
        xs = [(s * (i + 1) / (nx + 1), h * L1) for i in range(nx)]
        if sol.theta0 > 0:
            xs += [(r + 3 * L2 * (i + 1) / nx, h * L2) for i in range(nx)]
        for x, hh in xs:
            try:
                res = pde_residual(sol, x, t, hh)
            except StencilCrossesFront:
                continue
            region = sol.region(x, t)
            pde[region] = max(pde[region], res)
            ratio = max(ratio, float(res / pde_bound(sol, x, t, hh)))
            points += 1

        q1 = mp.k1 * sol.theta1_x(s, t)
        q2 = mp.k2 * sol.theta2_x(r, t)
        sdot, rdot = sol.front_speeds(t)
        latent = mp.rho * mp.l * (mp.eps * sdot + (1 - mp.eps) * rdot)
        stefan = max(stefan, abs(q1 - q2 - latent) / max(abs(q1), abs(q2), abs(latent)))

        g1 = sol.theta1_x(s, t)
        w = g1 * (r - s)
        width = max(width, abs(w - mp.gamma) / max(mp.gamma, g1 * r))

        if sol.kind == "convective":
            lhs = mp.k1 * sol.theta1_x(0.0, t)
            rhs = sol.h0 / math.sqrt(t) * (sol.theta1(0.0, t) + sol.D)
            flux = max(flux, abs(lhs - rhs) / max(abs(lhs), sol.h0 / math.sqrt(t) * sol.D))
        else:
            flux = max(flux, abs(sol.theta1(0.0, t) + sol.D) / temp_scale)

        iface = max(iface, abs(sol.theta1(s, t)) / temp_scale, abs(sol.theta2(r, t)) / temp_scale)
        x_far = r + FAR_FIELD * math.sqrt(sol.alpha2 * t)
        far = max(far, abs(sol.theta2(x_far, t) - sol.theta0))

    return ResidualReport(
        pde_solid_max=pde[Region.SOLID],
        pde_liquid_max=pde[Region.LIQUID],
        stefan_max=stefan,
        width_max=width,
        flux_bc_max=flux,
        interface_temp_max=iface,
        far_field_gap=far,
        fd_order_slope=fd_order_slope(sol),
        pde_bound_ratio=ratio,
        pde_points=points,
    )
