import math

import numpy as np
import pytest

from chaos_mwu.chaos import lyapunov, scrambled_metrics, equilibrium_unstable
from chaos_mwu.dynamics import MapParams, RateRule
from chaos_mwu.errors import DomainError


def test_lyapunov_at_unstable_equilibrium():
    p = MapParams(25.0, 0.5)
    assert lyapunov(0.5, p, n=500, burn_in=0) == pytest.approx(math.log(5.25), rel=1e-12)


def test_lyapunov_at_stable_equilibrium():
    value = lyapunov(0.9, MapParams(3.0, 0.4), n=3000, burn_in=1000)
    assert value == pytest.approx(math.log(0.28), abs=1e-6)


@pytest.mark.parametrize("x0", [0.1, 0.3, 0.77])
def test_lyapunov_positive_in_chaotic_regime(params, x0):
    assert lyapunov(x0, params, n=20000, burn_in=1000) > 0.0


@pytest.mark.slow
def test_lyapunov_stable_across_initial_shares(params):
    starts = np.random.default_rng(3).uniform(0.05, 0.95, 10)
    values = np.array([lyapunov(float(x0), params, n=200000, burn_in=1000) for x0 in starts])
    assert (values > 0.0).all()
    assert np.abs(values - values.mean()).max() <= 0.05


def test_lyapunov_adaptive_matches_constant_rule(params):
    fixed = lyapunov(0.3, params, n=2000, burn_in=100)
    adaptive = lyapunov(0.3, RateRule.constant(params.a), params.b, n=2000, burn_in=100)
    assert fixed == adaptive


@pytest.mark.parametrize("x0,n,burn_in", [(0.0, 100, 10), (1.0, 100, 10), (0.3, 10, 10)])
def test_lyapunov_invalid(params, x0, n, burn_in):
    with pytest.raises(DomainError):
        lyapunov(x0, params, n=n, burn_in=burn_in)


def test_lyapunov_rule_needs_equilibrium(rule):
    with pytest.raises(DomainError):
        lyapunov(0.3, rule)


def test_identical_starts_never_separate(rule):
    metrics = scrambled_metrics(0.3, 0.3, rule, 0.4, n=100)
    low, high = metrics
    assert (low, high) == (0.0, 0.0)
    assert metrics.tail_start == 50
    assert metrics.horizon == 100


def test_scrambled_gap_bounds(rule):
    metrics = scrambled_metrics(0.3, 0.31, rule, 0.4, n=400, tail=0.25, times=(0, 1, 399))
    assert 0.0 <= metrics.min_gap <= metrics.max_gap <= 1.0
    assert metrics.tail_start == 300
    assert metrics.gaps[0] == pytest.approx(0.01)
    assert set(metrics.gaps) == {0, 1, 399}


def test_extended_precision_agrees_early(rule):
    single = scrambled_metrics(0.3, 0.31, rule, 0.4, n=4, tail=1.0, times=(1, 2))
    precise = scrambled_metrics(0.3, 0.31, rule, 0.4, n=4, tail=1.0, times=(1, 2), precision=200)
    assert precise.gaps[1] == pytest.approx(single.gaps[1], abs=1e-12)
    assert precise.gaps[2] == pytest.approx(single.gaps[2], abs=1e-10)


def test_scrambled_rejects_boundary_start(rule):
    with pytest.raises(DomainError):
        scrambled_metrics(0.0, 0.3, rule, 0.4, n=10)
    with pytest.raises(DomainError):
        scrambled_metrics(0.2, 0.3, rule, 0.4, n=10, tail=0.0)


def test_equilibrium_instability(params):
    slope, unstable = equilibrium_unstable(params)
    assert slope == pytest.approx(5.0)
    assert unstable
    slope, unstable = equilibrium_unstable(MapParams(3.0, 0.4))
    assert slope == pytest.approx(0.28)
    assert not unstable
