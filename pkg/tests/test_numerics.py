import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import frozen
import oracles
from mushy_stefan.errors import BracketError, ConvergenceError, DomainError, NoRoot
from mushy_stefan.numerics import (
    BACKEND,
    Bracket,
    RootConfig,
    _kernels_py,
    erf,
    erfc,
    erfcx,
    expand_bracket,
    find_root,
    fit_loglog_slope,
)

try:
    from mushy_stefan.numerics import _kernels as _compiled
except ImportError:
    _compiled = None


def test_erf_against_quadrature():
    for x in np.linspace(-6, 6, 61):
        ref = float(oracles.erf_quad(x))
        assert abs(erf(x) - ref) <= 2e-16 * max(1.0, abs(ref))


def test_erfc_relative_accuracy():
    for x in np.linspace(-6, 26, 81):
        ref = float(oracles.erfc_quad(x))
        assert abs(erfc(x) - ref) <= 1e-15 * ref


def test_erfcx_against_extended_precision():
    import mpmath as mpm

    for x in [0.0, 0.3, 1.0, 1.25, 2.0, 5.0, 27.9, 28.0, 100.0, 1e4, 1e10]:
        with mpm.workdps(40):
            ref = float(mpm.exp(mpm.mpf(x) ** 2) * mpm.erfc(x))
        assert abs(erfcx(x) - ref) <= 1e-15 * ref


def test_frozen_values():
    assert erf(1.0) == pytest.approx(frozen.ERF_1, rel=1e-15)
    assert erfc(3.0) == pytest.approx(frozen.ERFC_3, rel=1e-15)


def test_special_edge_values():
    assert erf(0.0) == 0.0
    assert erfc(0.0) == 1.0
    assert erf(7.0) == 1.0
    assert erfc(30.0) == 0.0
    assert erfc(-30.0) == 2.0
    assert erfcx(0.0) == 1.0


@pytest.mark.parametrize("fn", [erf, erfc, erfcx])
@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_special_rejects_nonfinite(fn, bad):
    with pytest.raises(DomainError):
        fn(bad)


@given(st.floats(-10, 10))
def test_erf_odd_and_complement(x):
    assert erf(-x) == -erf(x)
    assert abs(erf(x) + erfc(x) - 1) <= 2.3e-16


@given(st.floats(0, 20), st.floats(0, 20))
def test_erf_monotone(a, b):
    a, b = sorted((a, b))
    assert erf(a) <= erf(b)
    assert erfc(a) >= erfc(b)


@pytest.mark.skipif(_compiled is None, reason="compiled extension not built")
def test_backends_agree():
    xs = np.linspace(-8, 30, 2001)
    for x in xs:
        for name in ("erf", "erfc", "erfcx"):
            a = getattr(_compiled, name)(x)
            b = getattr(_kernels_py, name)(x)
            assert a == pytest.approx(b, rel=2e-16, abs=1e-300)
    args = (1.3, 0.2, 0.7, 0.4, 0.9, 1.1)
    for x in np.linspace(0.01, 3, 50):
        ca = _compiled.family(x, *args)
        pa = _kernels_py.family(x, *args)
        assert ca == pytest.approx(pa, rel=1e-14)
    ra = _compiled.solve_residual(1e-10, 4.0, *args, 0.8, 1e-14, 1e-15, 200)
    rb = _kernels_py.solve_residual(1e-10, 4.0, *args, 0.8, 1e-14, 1e-15, 200)
    assert ra == pytest.approx(rb, abs=1e-14)


def test_backend_name():
    assert BACKEND in ("compiled", "python")


def test_bracket_validation():
    assert Bracket(0, 1).width == 1
    with pytest.raises(DomainError):
        Bracket(1, 1)
    with pytest.raises(DomainError):
        Bracket(0, math.inf)


def test_root_config_validation():
    with pytest.raises(DomainError):
        RootConfig(abs_tol=0)
    with pytest.raises(DomainError):
        RootConfig(max_iter=0)


def test_find_root_polynomial():
    root = find_root(lambda x: x**3 - 2, Bracket(0, 2))
    assert root == pytest.approx(2 ** (1 / 3), abs=1e-14)


def test_find_root_needs_sign_change():
    with pytest.raises(BracketError):
        find_root(lambda x: x * x + 1, (0, 1))


def test_find_root_iteration_limit_carries_bracket():
    with pytest.raises(ConvergenceError) as info:
        find_root(lambda x: x - 0.3, (0, 1), RootConfig(abs_tol=1e-300, rel_tol=0, max_iter=1))
    lo, hi = info.value.bracket
    assert lo <= 0.3 <= hi


@given(st.floats(-50, 50))
def test_find_root_shifted_line(c):
    assert find_root(lambda x: math.tanh(x - c), (-100, 100)) == pytest.approx(c, abs=1e-12)


def test_expand_bracket_both_directions():
    b = expand_bracket(lambda x: 1 - x, increasing=False, start=1e-8)
    assert b.lo <= 1 <= b.hi
    b = expand_bracket(lambda x: x - 1e-12, increasing=True, start=1.0)
    assert b.lo <= 1e-12 <= b.hi
    with pytest.raises(NoRoot):
        expand_bracket(lambda x: 1.0, increasing=False, cap=26.0)


def test_loglog_slope_exact_power_law():
    pairs = [(h, 3 * h**2) for h in (1e-2, 5e-3, 2.5e-3)]
    assert fit_loglog_slope(pairs) == pytest.approx(2.0, abs=1e-12)


@given(st.floats(-3, 3), st.floats(0.01, 100))
def test_loglog_slope_recovers_exponent(p, c):
    hs = np.logspace(-3, 0, 7)
    assert fit_loglog_slope([(h, c * h**p) for h in hs]) == pytest.approx(p, abs=1e-9)


@pytest.mark.parametrize(
    "pairs",
    [
        [(1, 1), (2, 2)],
        [(1, 1), (2, 0), (3, 1)],
        [(1, 1), (-2, 2), (3, 1)],
        [(1, 1), (2, math.nan), (3, 1)],
        [(2, 1), (2, 2), (2, 3)],
    ],
)
def test_loglog_slope_rejects(pairs):
    with pytest.raises(DomainError):
        fit_loglog_slope(pairs)


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, MUSHY_STEFAN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from mushy_stefan import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"
