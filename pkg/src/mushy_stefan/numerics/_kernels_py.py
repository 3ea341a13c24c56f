"""Pure-Python kernels: error functions, family evaluation, fused root solve.

Mirrors ``_kernels.pyx`` function for function. The compiled module is
preferred at import time; this one is the fallback and the reference the
compiled build is tested against.

The error-function approximations are the rational fits of FreeBSD's
``s_erf.c`` (Sun Microsystems, 1993), max error below 1 ulp on each range.

    Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
    Developed at SunPro, a Sun Microsystems, Inc. business.
    Permission to use, copy, modify, and distribute this software is
    freely granted, provided that this notice is preserved.
"""

import math
import struct

from mushy_stefan.errors import BracketError, ConvergenceError

SQRT_PI = 1.7724538509055160273

erx = 8.45062911510467529297e-01
efx = 1.28379167095512586316e-01

# erf on [0, 0.84375]
pp = (1.28379167095512558561e-01, -3.25042107247001499370e-01,
      -2.84817495755985104766e-02, -5.77027029648944159157e-03,
      -2.37630166566501626084e-05)
qq = (1.0, 3.97917223959155352819e-01, 6.50222499887672944485e-02,
      5.08130628187576562776e-03, 1.32494738004321644526e-04,
      -3.96022827877536812320e-06)
# erf on [0.84375, 1.25]
pa = (-2.36211856075265944077e-03, 4.14856118683748331666e-01,
      -3.72207876035701323847e-01, 3.18346619901161753674e-01,
      -1.10894694282396677476e-01, 3.54783043256182359371e-02,
      -2.16637559486879084300e-03)
qa = (1.0, 1.06420880400844228286e-01, 5.40397917702171048937e-01,
      7.18286544141962662868e-02, 1.26171219808761642112e-01,
      1.36370839120290507362e-02, 1.19844998467991074170e-02)
# erfc on [1.25, 1/0.35]
ra = (-9.86494403484714822705e-03, -6.93858572707181764372e-01,
      -1.05586262253232909814e01, -6.23753324503260060396e01,
      -1.62396669462573470355e02, -1.84605092906711035994e02,
      -8.12874355063065934246e01, -9.81432934416914548592e00)
sa = (1.0, 1.96512716674392571292e01, 1.37657754143519042600e02,
      4.34565877475229228821e02, 6.45387271733267880336e02,
      4.29008140027567833386e02, 1.08635005541779435134e02,
      6.57024977031928170135e00, -6.04244152148580987438e-02)
# erfc on [1/0.35, 28]
rb = (-9.86494292470009928597e-03, -7.99283237680523006574e-01,
      -1.77579549177547519889e01, -1.60636384855821916062e02,
      -6.37566443368389627722e02, -1.02509513161107724954e03,
      -4.83519191608651397019e02)
sb = (1.0, 3.03380607434824582924e01, 3.25792512996573918826e02,
      1.53672958608443695994e03, 3.19985821950859553908e03,
      2.55305040643316442583e03, 4.74528541206955367215e02,
      -2.24409524465858183362e01)

_ONE_OVER_035 = 1.0 / 0.35


def _horner(c, s):
    acc = c[-1]
    for a in reversed(c[:-1]):
        acc = acc * s + a
    return acc


def _tail_ratio(ax):
    """R/S of the large-argument rational fit; ``ax >= 1.25``."""
    s = 1.0 / (ax * ax)
    if ax < _ONE_OVER_035:
        return _horner(ra, s) / _horner(sa, s)
    return _horner(rb, s) / _horner(sb, s)


def _trunc_low_word(x):
    (bits,) = struct.unpack("<Q", struct.pack("<d", x))
    (z,) = struct.unpack("<d", struct.pack("<Q", bits & 0xFFFFFFFF00000000))
    return z


def _tail(ax):
    # exp(-ax^2 - 0.5625 + R/S) / ax with the square split so it stays exact
    z = _trunc_low_word(ax)
    r = math.exp(-z * z - 0.5625) * math.exp((z - ax) * (z + ax) + _tail_ratio(ax))
    return r / ax


def erf(x):
    ax = abs(x)
    if ax < 0.84375:
        if ax < 3.7252902984e-09:
            return x + efx * x
        z = x * x
        return x + x * (_horner(pp, z) / _horner(qq, z))
    if ax < 1.25:
        s = ax - 1.0
        v = erx + _horner(pa, s) / _horner(qa, s)
        return v if x >= 0 else -v
    if ax >= 6.0:
        return 1.0 if x >= 0 else -1.0
    v = 1.0 - _tail(ax)
    return v if x >= 0 else -v


def erfc(x):
    ax = abs(x)
    if ax < 0.84375:
        if ax < 1.3877787807814457e-17:
            return 1.0 - x
        z = x * x
        y = _horner(pp, z) / _horner(qq, z)
        if x < 0.25:
            return 1.0 - (x + x * y)
        return 0.5 - (x * y + (x - 0.5))
    if ax < 1.25:
        s = ax - 1.0
        pq = _horner(pa, s) / _horner(qa, s)
        if x >= 0:
            return (1.0 - erx) - pq
        return 1.0 + (erx + pq)
    if ax < 28.0:
        if x < -6.0:
            return 2.0
        r = _tail(ax)
        return r if x > 0 else 2.0 - r
    return 0.0 if x > 0 else 2.0


def _erfcx_asymptotic(x):
    # 1/(x sqrt(pi)) * sum (-1)^n (2n-1)!! / (2x^2)^n, x >= 28
    w = 1.0 / (2.0 * x * x)
    term = 1.0
    acc = 1.0
    for n in range(1, 10):
        term *= -(2 * n - 1) * w
        acc += term
    return acc / (x * SQRT_PI)


def erfcx(x):
    """exp(x^2) * erfc(x) without overflow for large positive x."""
    if x < 1.25:
        if x < -26.0:
            return math.inf
        if x < 0.0:
            return 2.0 * math.exp(x * x) - erfcx(-x)
        return math.exp(x * x) * erfc(x)
    if x < 28.0:
        return math.exp(_tail_ratio(x) - 0.5625) / x
    return _erfcx_asymptotic(x)


def f2(y):
    """exp(-y^2) / erfc(y)."""
    return 1.0 / erfcx(y)


def family(x, D, kappa, gamma, eps, pref, sqrt_a12):
    """Return (W, F1, F2(sqrt(a12) W), F, G) at ``x``.

    ``kappa`` is the additive term next to erf (zero for the temperature
    condition), ``pref`` the liquid prefactor theta0 sqrt(k2 c2)/(D sqrt(k1 c1)).
    """
    ex = math.exp(x * x)
    ek = erf(x) + kappa
    width = gamma * SQRT_PI / (2.0 * D) * ex * ek
    W = x + width
    G = x + (1.0 - eps) * width
    F1 = 1.0 / (ex * ek)
    F2W = f2(sqrt_a12 * W) if pref != 0.0 else 1.0
    F = F1 - pref * F2W
    return W, F1, F2W, F, G


def residual(x, D, kappa, gamma, eps, pref, sqrt_a12, lat):
    """F(x) - lat * G(x); the similarity-parameter equation."""
    _, _, _, F, G = family(x, D, kappa, gamma, eps, pref, sqrt_a12)
    return F - lat * G


def residual_grid(xs, D, kappa, gamma, eps, pref, sqrt_a12, lat):
    return [residual(x, D, kappa, gamma, eps, pref, sqrt_a12, lat) for x in xs]


def family_grid(xs, D, kappa, gamma, eps, pref, sqrt_a12):
    """Columns (W, F1, F2W, F, G) over ``xs``."""
    rows = [family(x, D, kappa, gamma, eps, pref, sqrt_a12) for x in xs]
    return tuple(list(col) for col in zip(*rows)) if rows else ([], [], [], [], [])


def brentq(f, xa, xb, xtol, rtol, maxiter):
    """Brent's method on [xa, xb]; returns (root, iterations).

    Inverse quadratic / secant steps, falling back to bisection whenever the
    interpolated step is not safely inside the bracket.
    """
    xpre, xcur = xa, xb
    fpre, fcur = f(xpre), f(xcur)
    if math.isnan(fpre) or math.isnan(fcur):
        raise BracketError(f"f is NaN at a bracket end: f({xa})={fpre}, f({xb})={fcur}")
    if fpre * fcur > 0:
        raise BracketError(f"no sign change: f({xa})={fpre}, f({xb})={fcur}")
    if fpre == 0:
        return xpre, 0
    if fcur == 0:
        return xcur, 0
    xblk = fblk = spre = scur = 0.0
    for it in range(1, maxiter + 1):
        if (fpre < 0) != (fcur < 0):
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur, xblk = xcur, xblk, xcur
            fpre, fcur, fblk = fcur, fblk, fcur
        delta = (xtol + rtol * abs(xcur)) / 2
        sbis = (xblk - xcur) / 2
        if fcur == 0 or abs(sbis) < delta:
            return xcur, it
        if abs(spre) > delta and abs(fcur) < abs(fpre):
            if xpre == xblk:
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            if 2 * abs(stry) < min(abs(spre), 3 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre = scur = sbis
        else:
            spre = scur = sbis
        xpre, fpre = xcur, fcur
        if abs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0 else -delta
        fcur = f(xcur)
        if math.isnan(fcur):
            raise ConvergenceError(f"f is NaN at {xcur}", (min(xpre, xblk), max(xpre, xblk)))
    raise ConvergenceError(
        f"no convergence in {maxiter} iterations",
        (min(xcur, xblk), max(xcur, xblk)),
    )


def solve_residual(lo, hi, D, kappa, gamma, eps, pref, sqrt_a12, lat, xtol, rtol, maxiter):
    """Root of :func:`residual` on [lo, hi]."""
    root, _ = brentq(
        lambda x: residual(x, D, kappa, gamma, eps, pref, sqrt_a12, lat),
        lo, hi, xtol, rtol, maxiter,
    )
    return root
