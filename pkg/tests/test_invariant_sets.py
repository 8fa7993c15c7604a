import numpy as np
import pytest

from chaos_mwu.dynamics import AdaptiveEnsemble, MapParams, RateRule
from chaos_mwu.errors import DomainError, NoCriticalPoints, NotAbsorbed, NotExpanded
from chaos_mwu.geometry import invariant_sets
from chaos_mwu.geometry import (
    Interval, contains, hausdorff, image_n, envelope, check_perpetual, monotone_attraction_check,
    absorption_time_fixed, delta_set, absorption_time_adaptive, volume_expansion_fixed, expansion_target,
    volume_expansion_adaptive, monotone_map_check,
)


def test_envelope_ordering(params):
    env = envelope(params)
    assert env.ordered
    assert env.x_max + env.x_min == pytest.approx(1.0)
    assert env.f_min < env.x_max < params.b < env.x_min < env.f_max
    assert env.perpetual == Interval(env.f_min, env.f_max)


def test_envelope_needs_critical_points():
    with pytest.raises(NoCriticalPoints):
        envelope(MapParams(3.0, 0.4))


@pytest.mark.parametrize("b", [0.4, 0.7])
def test_perpetual_set_is_invariant_and_surjective(b):
    report = check_perpetual(MapParams(25.0, b))
    assert report.forward_invariant
    assert report.surjective
    assert report.margin <= 1e-12


def test_monotone_attraction(params):
    assert monotone_attraction_check(params)


def test_fixed_absorption(params):
    assert absorption_time_fixed((0.01, 0.02), params) == 0
    assert absorption_time_fixed((1e-6, 2e-6), params) == 1


def test_fixed_absorption_cap(params):
    with pytest.raises(NotAbsorbed) as info:
        absorption_time_fixed((1e-6, 2e-6), params, n_cap=0)
    assert info.value.context["n_cap"] == 0


@pytest.mark.parametrize("interval", [(0.0, 0.2), (0.5, 1.0)])
def test_absorption_needs_interior_interval(params, interval):
    with pytest.raises(DomainError):
        absorption_time_fixed(interval, params)


def test_delta_set_of_constant_rule(params):
    delta = delta_set(RateRule.constant(params.a), params.b)
    assert delta.interval == envelope(params).perpetual


def test_delta_set_covers_every_perpetual_set(rule):
    delta = delta_set(rule, 0.4)
    for a in (20.0, 25.0, 30.0):
        assert contains(delta.interval, envelope(MapParams(a, 0.4)).perpetual, tol=1e-12)
    assert delta.grid > 1


def test_delta_set_needs_chaotic_envelope():
    with pytest.raises(DomainError):
        delta_set(RateRule.gaussian_bump(3.0, 30.0), 0.4)


def test_adaptive_absorption_short_run(rule):
    report = absorption_time_adaptive((0.05, 0.95), rule, 0.4, samples=64, n_cap=2000)
    assert 0 <= report.steps <= 2000
    assert 0.0 < report.interiority < 0.05
    assert report.target == delta_set(rule, 0.4).interval


@pytest.mark.slow
def test_adaptive_absorption_full(rule):
    report = absorption_time_adaptive((0.05, 0.95), rule, 0.4, samples=512, n_cap=100000)
    assert report.steps < 100000
    assert report.samples == 512


def test_fixed_volume_expansion(params):
    start = (params.b - 1e-3, params.b + 1e-3)
    report = volume_expansion_fixed(start, params)
    assert report.steps <= 1000
    assert report.distance <= 1e-9
    assert report.persists_to == min(2 * report.steps, 1000)
    F = envelope(params).perpetual
    for k in range(report.steps, 2 * report.steps + 1):
        assert hausdorff(image_n(start, params, k), F) <= 1e-9


def test_expansion_needs_equilibrium_inside(params):
    with pytest.raises(DomainError):
        volume_expansion_fixed((0.5, 0.6), params)


def test_expansion_target(rule, params):
    assert expansion_target(RateRule.constant(params.a), params.b, 0.5) == envelope(params).perpetual
    assert expansion_target(rule, 0.4, 0.5) == envelope(MapParams(29.5, 0.4)).perpetual
    with pytest.raises(DomainError):
        expansion_target(rule, 0.4, 10.0)


@pytest.mark.slow
def test_adaptive_volume_expansion(rule):
    report = volume_expansion_adaptive((0.399, 0.401), rule, 0.4, eps=0.5)
    assert report.steps <= 2000
    assert report.target == envelope(MapParams(29.5, 0.4)).perpetual
    assert report.tolerance == pytest.approx(report.target.diam / (report.samples - 1))
    assert 0.0 <= report.grid_distance
    assert report.to_dict()["grid_distance"] == report.grid_distance


def test_fixed_volume_expansion_rejects_image_that_leaves(params, monkeypatch):
    F = envelope(params).perpetual
    exact = invariant_sets.interval_image

    def drifting(I, p):
        if hausdorff(I, F) <= 1e-9:
            return Interval(F.lo + 0.01, F.hi - 0.01)
        return exact(I, p)

    monkeypatch.setattr(invariant_sets, "interval_image", drifting)
    with pytest.raises(NotExpanded) as info:
        volume_expansion_fixed((params.b - 1e-3, params.b + 1e-3), params)
    context = info.value.context
    assert context["step"] == context["steps"] + 1


def test_monotone_map_check():
    assert monotone_map_check(MapParams(3.0, 0.4))
    assert monotone_map_check(MapParams(1.0, 0.7))
    assert not monotone_map_check(MapParams(25.0, 0.4))


def test_delta_set_is_forward_invariant_for_adaptive_orbits(rule):
    b = 0.4
    delta = delta_set(rule, b).interval
    rng = np.random.default_rng(7)
    ensemble = AdaptiveEnsemble(rng.uniform(0.01, 0.99, 1000), rule, b)
    entered = np.zeros(len(ensemble), dtype=bool)
    for _ in range(2000):
        ensemble.advance(1)
        inside = (ensemble.x >= delta.lo - 1e-9) & (ensemble.x <= delta.hi + 1e-9)
        assert not (entered & ~inside).any()
        entered |= inside
    assert entered.mean() > 0.9
