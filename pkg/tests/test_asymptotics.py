import numpy as np
import pytest

import frozen
import oracles
from mushy_stefan.asymptotics import (
    SweepRecord,
    check_J_ordering,
    estimate_rates,
    sweep_h0,
)
from mushy_stefan.errors import DomainError
from mushy_stefan.model import ConvectiveBC
from mushy_stefan.transcendental import ConvectiveFamily, find_nu


def test_sweep_monotone(unit_mp):
    recs = sweep_h0(unit_mp, 1.0, 1.0, np.logspace(1, 5, 9))
    xi = [r.xi for r in recs]
    assert np.all(np.diff(xi) > 0)
    for field in ("xi_gap", "mu_gap", "theta1_gap", "theta2_gap", "s_gap", "r_gap"):
        gaps = [getattr(r, field) for r in recs]
        assert all(g > 0 for g in gaps), field
        assert np.all(np.diff(gaps) < 0), field


def test_sweep_gaps_against_oracle(unit_mp):
    xi_inf = oracles.front(unit_mp, 1.0, 1.0)
    recs = sweep_h0(unit_mp, 1.0, 1.0, [1e1, 1e3, 1e5])
    for r in recs:
        ref = float(xi_inf - oracles.front(unit_mp, 1.0, 1.0, r.h0))
        assert r.xi_gap == pytest.approx(ref, rel=1e-8, abs=1e-14)
    assert recs[0].xi == pytest.approx(frozen.XI_10, abs=1e-14)


def test_sweep_flags_entries_below_threshold(unit_mp):
    logged = []
    recs = sweep_h0(unit_mp, 1.0, 1.0, [0.5, 1.0, 10.0], log=logged.append)
    assert [r.skipped for r in recs] == [True, True, False]
    assert len(logged) == 2


def test_sweep_rejects_unsorted_ladder(unit_mp):
    with pytest.raises(DomainError):
        sweep_h0(unit_mp, 1.0, 1.0, [10.0, 5.0])


def test_rates_on_exact_power_law():
    hs = np.logspace(2, 6, 9)
    recs = [SweepRecord(h, 0.1, 0.2, *(c / h for c in (1, 2, 3, 4, 5, 6))) for h in hs]
    rep = estimate_rates(recs, top_fraction=1.0)
    assert all(s == pytest.approx(-1.0, abs=1e-12) for s in rep.slopes)
    assert rep.n_points == 9


def test_rates_need_enough_points():
    recs = [SweepRecord(h, 0.1, 0.2, *(1 / h,) * 6) for h in (1e2, 1e3, 1e4)]
    with pytest.raises(DomainError):
        estimate_rates(recs, top_fraction=1.0)
    recs = [SweepRecord(h, 0.1, 0.2, *(1 / h,) * 6) for h in np.logspace(2, 3, 6)]
    with pytest.raises(DomainError):
        estimate_rates(recs, top_fraction=1.0)


def test_pre_asymptotic_ladder_reported(unit_mp):
    low = estimate_rates(sweep_h0(unit_mp, 1.0, 1.0, np.logspace(0.1, 2.1, 6)), top_fraction=1.0)
    high = estimate_rates(sweep_h0(unit_mp, 1.0, 1.0, np.logspace(4, 6, 6)), top_fraction=1.0)
    assert all(np.isfinite(low.slopes))
    # the transient shows up as a larger departure from -1 on the low ladder
    assert max(abs(s + 1) for s in low.slopes) > 10 * max(abs(s + 1) for s in high.slopes)


def test_J_ordering(unit_mp):
    f1 = ConvectiveFamily(unit_mp, ConvectiveBC(1.0, 1.0, 1e2))
    nu = find_nu(f1)
    xs = np.random.default_rng(0).uniform(1e-6, nu * (1 - 1e-9), 100)
    assert check_J_ordering(unit_mp, 1.0, 1.0, (1e2, 1e4), xs)


def test_J_ordering_rejects(unit_mp):
    with pytest.raises(DomainError):
        check_J_ordering(unit_mp, 1.0, 1.0, (1e2, 1e2), [0.1])
    with pytest.raises(DomainError):
        check_J_ordering(unit_mp, 1.0, 1.0, (1e2, 1e4), [5.0])
