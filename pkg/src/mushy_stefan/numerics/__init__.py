"""Special functions, bracketed root finding and log-log regression.

The hot kernels come from the compiled ``_kernels`` extension when it was
built, otherwise from ``_kernels_py``. Set ``MUSHY_STEFAN_PURE_PYTHON=1`` to
force the fallback. ``BACKEND`` names the one in use.
"""

import os

if os.environ.get("MUSHY_STEFAN_PURE_PYTHON"):
    from mushy_stefan.numerics import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from mushy_stefan.numerics import _kernels as kernels
        BACKEND = "compiled"
    except ImportError:
        from mushy_stefan.numerics import _kernels_py as kernels
        BACKEND = "python"

from mushy_stefan.numerics.regression import fit_loglog_slope
from mushy_stefan.numerics.roots import (
    Bracket,
    RootConfig,
    expand_bracket,
    find_root,
)
from mushy_stefan.numerics.special import erf, erfc, erfcx

__all__ = [
    "BACKEND",
    "Bracket",
    "RootConfig",
    "erf",
    "erfc",
    "erfcx",
    "expand_bracket",
    "find_root",
    "fit_loglog_slope",
    "kernels",
]
