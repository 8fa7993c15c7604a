import pytest

from chaos_mwu.chaos import (
    TrackingConfig, NestedFamily, build_turbulent_pair, refine_nested, schedule_times, adaptive_burn_in,
    verify_schedule, track_symbolic, track_pair, tracking_evidence, scrambled_metrics,
)
from chaos_mwu.chaos.tracking import default_seed
from chaos_mwu.dynamics import MapParams, RateRule
from chaos_mwu.errors import DomainError, NotTracked


def test_schedule_times():
    assert schedule_times(10, 4) == [10, 12, 16, 22]
    assert schedule_times(5, 1) == [5]
    times = schedule_times(7, 6)
    for i in range(1, len(times)):
        assert times[i] - times[i - 1] - 2 * i >= 0
        assert (times[i] - times[i - 1] - 2 * i) % 2 == 0


def test_default_seed():
    assert default_seed(0.4) == pytest.approx((0.399, 0.401))
    lo, hi = default_seed(1e-5)
    assert 0.0 < lo < 1e-5 < hi


@pytest.mark.parametrize("bits", [(), (0, 1), (2,)])
def test_bits_are_validated(bits):
    family = NestedFamily(base=None, V=[(0.1, 0.2)], U=[(0.3, 0.4)])
    with pytest.raises(DomainError):
        track_symbolic(bits, RateRule.constant(25.0), 0.4, family)


@pytest.fixture(scope="module")
def fixed_family():
    return refine_nested(build_turbulent_pair(MapParams(25.0, 0.4)), 2)


def test_burn_in_covers_both_intervals(fixed_family):
    n0 = adaptive_burn_in(RateRule.constant(25.0), 0.4, fixed_family, samples=1024)
    assert n0 > 0


def test_burn_in_cap(fixed_family):
    with pytest.raises(NotTracked):
        adaptive_burn_in(RateRule.constant(25.0), 0.4, fixed_family, samples=64, cap=0)


def test_tracks_short_string_at_fixed_rate(fixed_family):
    rule = RateRule.constant(25.0)
    schedule = track_symbolic((0, 1), rule, 0.4, fixed_family)
    assert schedule.depth == 2
    assert schedule.times[1] - schedule.times[0] >= 2
    assert (schedule.times[1] - schedule.times[0]) % 2 == 0
    assert min(schedule.margins) >= 0.0
    assert verify_schedule(schedule, rule, 0.4) == schedule.margins
    assert schedule.to_dict()["bits"] == [0, 1]


def test_tracks_six_symbols_at_fixed_rate():
    rule = RateRule.constant(25.0)
    family = refine_nested(build_turbulent_pair(MapParams(25.0, 0.4)), 5)
    bits = (0, 1, 1, 0, 1, 0)
    schedule = track_symbolic(bits, rule, 0.4, family)
    assert schedule.depth == 6
    assert schedule.to_dict()["bits"] == list(bits)
    assert min(schedule.margins) >= 0.0
    assert verify_schedule(schedule, rule, 0.4) == schedule.margins


@pytest.mark.slow
def test_scrambled_pair_evidence(rule):
    b = 0.4
    family = refine_nested(build_turbulent_pair(MapParams(rule.limit_rate, b)), 8)
    agree = (0,) * 8
    alternate = tuple(i % 2 for i in range(8))
    first, second = track_pair(agree, alternate, rule, b, family, TrackingConfig())
    assert first.depth == second.depth == 8
    assert min(first.margins) >= 0.0 and min(second.margins) >= 0.0
    evidence = tracking_evidence(first, second, rule, b, family)
    assert evidence.holds
    assert evidence.separation > 0.0
    for row in evidence.rows:
        assert row["kind"] == ("differ" if row["level"] % 2 else "agree")
    horizon = max(first.times[-1], second.times[-1])
    metrics = scrambled_metrics(first.x0, second.x0, rule, b, n=horizon, times=first.times,
                                precision=max(first.precision, second.precision))
    assert metrics.max_gap >= 0.0
    assert set(metrics.gaps) == set(first.times)
