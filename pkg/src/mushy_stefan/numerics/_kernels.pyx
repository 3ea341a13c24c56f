# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as ``_kernels_py``.

Error-function fits from FreeBSD ``s_erf.c``:

    Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
    Developed at SunPro, a Sun Microsystems, Inc. business.
    Permission to use, copy, modify, and distribute this software is
    freely granted, provided that this notice is preserved.
"""

from libc.math cimport exp, fabs, isnan, INFINITY
from libc.stdint cimport uint64_t
from libc.string cimport memcpy

from mushy_stefan.errors import BracketError, ConvergenceError

cdef double SQRT_PI = 1.7724538509055160273
cdef double ERX = 8.45062911510467529297e-01
cdef double EFX = 1.28379167095512586316e-01
cdef double ONE_OVER_035 = 1.0 / 0.35

cdef double pp0 = 1.28379167095512558561e-01, pp1 = -3.25042107247001499370e-01
cdef double pp2 = -2.84817495755985104766e-02, pp3 = -5.77027029648944159157e-03
cdef double pp4 = -2.37630166566501626084e-05
cdef double qq1 = 3.97917223959155352819e-01, qq2 = 6.50222499887672944485e-02
cdef double qq3 = 5.08130628187576562776e-03, qq4 = 1.32494738004321644526e-04
cdef double qq5 = -3.96022827877536812320e-06

cdef double pa0 = -2.36211856075265944077e-03, pa1 = 4.14856118683748331666e-01
cdef double pa2 = -3.72207876035701323847e-01, pa3 = 3.18346619901161753674e-01
cdef double pa4 = -1.10894694282396677476e-01, pa5 = 3.54783043256182359371e-02
cdef double pa6 = -2.16637559486879084300e-03
cdef double qa1 = 1.06420880400844228286e-01, qa2 = 5.40397917702171048937e-01
cdef double qa3 = 7.18286544141962662868e-02, qa4 = 1.26171219808761642112e-01
cdef double qa5 = 1.36370839120290507362e-02, qa6 = 1.19844998467991074170e-02

cdef double ra0 = -9.86494403484714822705e-03, ra1 = -6.93858572707181764372e-01
cdef double ra2 = -1.05586262253232909814e01, ra3 = -6.23753324503260060396e01
cdef double ra4 = -1.62396669462573470355e02, ra5 = -1.84605092906711035994e02
cdef double ra6 = -8.12874355063065934246e01, ra7 = -9.81432934416914548592e00
cdef double sa1 = 1.96512716674392571292e01, sa2 = 1.37657754143519042600e02
cdef double sa3 = 4.34565877475229228821e02, sa4 = 6.45387271733267880336e02
cdef double sa5 = 4.29008140027567833386e02, sa6 = 1.08635005541779435134e02
cdef double sa7 = 6.57024977031928170135e00, sa8 = -6.04244152148580987438e-02

cdef double rb0 = -9.86494292470009928597e-03, rb1 = -7.99283237680523006574e-01
cdef double rb2 = -1.77579549177547519889e01, rb3 = -1.60636384855821916062e02
cdef double rb4 = -6.37566443368389627722e02, rb5 = -1.02509513161107724954e03
cdef double rb6 = -4.83519191608651397019e02
cdef double sb1 = 3.03380607434824582924e01, sb2 = 3.25792512996573918826e02
cdef double sb3 = 1.53672958608443695994e03, sb4 = 3.19985821950859553908e03
cdef double sb5 = 2.55305040643316442583e03, sb6 = 4.74528541206955367215e02
cdef double sb7 = -2.24409524465858183362e01


cdef inline double _small_ratio(double z) noexcept nogil:
    return (pp0 + z * (pp1 + z * (pp2 + z * (pp3 + z * pp4)))) / (
        1.0 + z * (qq1 + z * (qq2 + z * (qq3 + z * (qq4 + z * qq5)))))


cdef inline double _mid_ratio(double s) noexcept nogil:
    return (pa0 + s * (pa1 + s * (pa2 + s * (pa3 + s * (pa4 + s * (pa5 + s * pa6)))))) / (
        1.0 + s * (qa1 + s * (qa2 + s * (qa3 + s * (qa4 + s * (qa5 + s * qa6))))))


cdef inline double _tail_ratio(double ax) noexcept nogil:
    cdef double s = 1.0 / (ax * ax)
    if ax < ONE_OVER_035:
        return (ra0 + s * (ra1 + s * (ra2 + s * (ra3 + s * (ra4 + s * (ra5 + s * (ra6 + s * ra7))))))) / (
            1.0 + s * (sa1 + s * (sa2 + s * (sa3 + s * (sa4 + s * (sa5 + s * (sa6 + s * (sa7 + s * sa8))))))))
    return (rb0 + s * (rb1 + s * (rb2 + s * (rb3 + s * (rb4 + s * (rb5 + s * rb6)))))) / (
        1.0 + s * (sb1 + s * (sb2 + s * (sb3 + s * (sb4 + s * (sb5 + s * (sb6 + s * sb7)))))))


cdef inline double _tail(double ax) noexcept nogil:
    cdef uint64_t bits
    cdef double z
    memcpy(&bits, &ax, sizeof(double))
    bits &= <uint64_t>0xFFFFFFFF00000000
    memcpy(&z, &bits, sizeof(double))
    return exp(-z * z - 0.5625) * exp((z - ax) * (z + ax) + _tail_ratio(ax)) / ax


cdef double c_erf(double x) noexcept nogil:
    cdef double ax = fabs(x), v, z
    if ax < 0.84375:
        if ax < 3.7252902984e-09:
            return x + EFX * x
        z = x * x
        return x + x * _small_ratio(z)
    if ax < 1.25:
        v = ERX + _mid_ratio(ax - 1.0)
        return v if x >= 0 else -v
    if ax >= 6.0:
        return 1.0 if x >= 0 else -1.0
    v = 1.0 - _tail(ax)
    return v if x >= 0 else -v


cdef double c_erfc(double x) noexcept nogil:
    cdef double ax = fabs(x), y, z, pq, r
    if ax < 0.84375:
        if ax < 1.3877787807814457e-17:
            return 1.0 - x
        z = x * x
        y = _small_ratio(z)
        if x < 0.25:
            return 1.0 - (x + x * y)
        return 0.5 - (x * y + (x - 0.5))
    if ax < 1.25:
        pq = _mid_ratio(ax - 1.0)
        if x >= 0:
            return (1.0 - ERX) - pq
        return 1.0 + (ERX + pq)
    if ax < 28.0:
        if x < -6.0:
            return 2.0
        r = _tail(ax)
        return r if x > 0 else 2.0 - r
    return 0.0 if x > 0 else 2.0


cdef double c_erfcx(double x) noexcept nogil:
    cdef double w, term, acc
    cdef int n
    if x < 1.25:
        if x < -26.0:
            return INFINITY
        if x < 0.0:
            return 2.0 * exp(x * x) - c_erfcx(-x)
        return exp(x * x) * c_erfc(x)
    if x < 28.0:
        return exp(_tail_ratio(x) - 0.5625) / x
    w = 1.0 / (2.0 * x * x)
    term = 1.0
    acc = 1.0
    for n in range(1, 10):
        term *= -(2 * n - 1) * w
        acc += term
    return acc / (x * SQRT_PI)


ctypedef struct FamilyParams:
    double D, kappa, gamma, eps, pref, sqrt_a12, lat


cdef void c_family(double x, FamilyParams* p, double* out) noexcept nogil:
    cdef double ex = exp(x * x)
    cdef double ek = c_erf(x) + p.kappa
    cdef double width = p.gamma * SQRT_PI / (2.0 * p.D) * ex * ek
    cdef double W = x + width
    cdef double F2W = 1.0
    if p.pref != 0.0:
        F2W = 1.0 / c_erfcx(p.sqrt_a12 * W)
    out[0] = W
    out[1] = 1.0 / (ex * ek)
    out[2] = F2W
    out[3] = out[1] - p.pref * F2W
    out[4] = x + (1.0 - p.eps) * width


cdef double c_residual(double x, FamilyParams* p) noexcept nogil:
    cdef double out[5]
    c_family(x, p, out)
    return out[3] - p.lat * out[4]


cpdef double erf(double x):
    return c_erf(x)


cpdef double erfc(double x):
    return c_erfc(x)


cpdef double erfcx(double x):
    return c_erfcx(x)


cpdef double f2(double y):
    return 1.0 / c_erfcx(y)


def family(double x, double D, double kappa, double gamma, double eps,
           double pref, double sqrt_a12):
    cdef FamilyParams p = FamilyParams(D, kappa, gamma, eps, pref, sqrt_a12, 0.0)
    cdef double out[5]
    c_family(x, &p, out)
    return out[0], out[1], out[2], out[3], out[4]


cpdef double residual(double x, double D, double kappa, double gamma, double eps,
                      double pref, double sqrt_a12, double lat):
    cdef FamilyParams p = FamilyParams(D, kappa, gamma, eps, pref, sqrt_a12, lat)
    return c_residual(x, &p)


def residual_grid(xs, double D, double kappa, double gamma, double eps,
                  double pref, double sqrt_a12, double lat):
    cdef FamilyParams p = FamilyParams(D, kappa, gamma, eps, pref, sqrt_a12, lat)
    cdef double[::1] xv = _as_doubles(xs)
    cdef Py_ssize_t i, n = xv.shape[0]
    out = [0.0] * n
    for i in range(n):
        out[i] = c_residual(xv[i], &p)
    return out


def family_grid(xs, double D, double kappa, double gamma, double eps,
                double pref, double sqrt_a12):
    cdef FamilyParams p = FamilyParams(D, kappa, gamma, eps, pref, sqrt_a12, 0.0)
    cdef double[::1] xv = _as_doubles(xs)
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef double out[5]
    cols = ([0.0] * n, [0.0] * n, [0.0] * n, [0.0] * n, [0.0] * n)
    for i in range(n):
        c_family(xv[i], &p, out)
        cols[0][i] = out[0]
        cols[1][i] = out[1]
        cols[2][i] = out[2]
        cols[3][i] = out[3]
        cols[4][i] = out[4]
    return cols


cdef double[::1] _as_doubles(xs):
    from array import array
    return array("d", xs)


def solve_residual(double lo, double hi, double D, double kappa, double gamma,
                   double eps, double pref, double sqrt_a12, double lat,
                   double xtol, double rtol, int maxiter):
    """Brent's method on :func:`residual`, entirely in C."""
    cdef FamilyParams p = FamilyParams(D, kappa, gamma, eps, pref, sqrt_a12, lat)
    cdef double xpre = lo, xcur = hi, xblk = 0.0
    cdef double fpre, fcur, fblk = 0.0, spre = 0.0, scur = 0.0
    cdef double delta, sbis, stry, dpre, dblk, lim
    cdef int it
    fpre = c_residual(xpre, &p)
    fcur = c_residual(xcur, &p)
    if isnan(fpre) or isnan(fcur):
        raise BracketError(f"f is NaN at a bracket end: f({lo})={fpre}, f({hi})={fcur}")
    if fpre * fcur > 0:
        raise BracketError(f"no sign change: f({lo})={fpre}, f({hi})={fcur}")
    if fpre == 0:
        return xpre
    if fcur == 0:
        return xcur
    for it in range(maxiter):
        if (fpre < 0) != (fcur < 0):
            xblk = xpre
            fblk = fpre
            spre = xcur - xpre
            scur = spre
        if fabs(fblk) < fabs(fcur):
            xpre = xcur; xcur = xblk; xblk = xpre
            fpre = fcur; fcur = fblk; fblk = fpre
        delta = (xtol + rtol * fabs(xcur)) / 2
        sbis = (xblk - xcur) / 2
        if fcur == 0 or fabs(sbis) < delta:
            return xcur
        if fabs(spre) > delta and fabs(fcur) < fabs(fpre):
            if xpre == xblk:
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            lim = 3 * fabs(sbis) - delta
            if fabs(spre) < lim:
                lim = fabs(spre)
            if 2 * fabs(stry) < lim:
                spre = scur
                scur = stry
            else:
                spre = sbis
                scur = sbis
        else:
            spre = sbis
            scur = sbis
        xpre = xcur
        fpre = fcur
        if fabs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0 else -delta
        fcur = c_residual(xcur, &p)
        if isnan(fcur):
            raise ConvergenceError(f"f is NaN at {xcur}", (min(xpre, xblk), max(xpre, xblk)))
    raise ConvergenceError(
        f"no convergence in {maxiter} iterations", (min(xcur, xblk), max(xcur, xblk))
    )
