"""Checked scalar entry points for the error-function kernels."""

import math

from mushy_stefan.errors import DomainError


def _finite(x, name):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name}: non-finite argument {x!r}")
    return x


def erf(x):
    """Error function, absolute error below 1.2e-16 on the real line."""
    from mushy_stefan.numerics import kernels

    return kernels.erf(_finite(x, "erf"))


def erfc(x):
    """Complementary error function 1 - erf(x), relatively accurate for large x."""
    from mushy_stefan.numerics import kernels

    return kernels.erfc(_finite(x, "erfc"))


def erfcx(x):
    """Scaled complementary error function exp(x^2) erfc(x)."""
    from mushy_stefan.numerics import kernels

    return kernels.erfcx(_finite(x, "erfcx"))
