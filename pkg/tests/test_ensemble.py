import numpy as np
import pytest

from chaos_mwu.dynamics import AdaptiveEnsemble, RateRule, iterate_adaptive
from chaos_mwu.errors import DomainError


def test_matches_scalar_orbits_over_a_few_steps(rule):
    x0 = np.array([0.2, 0.35, 0.6, 0.8])
    ensemble = AdaptiveEnsemble(x0, rule, 0.4).advance(5)
    expected = [iterate_adaptive(float(x), rule, 0.4, 5).final_state.share for x in x0]
    np.testing.assert_allclose(ensemble.x, expected, atol=1e-8)
    assert ensemble.step == 5


def test_equilibrium_start_stays_put(rule):
    ensemble = AdaptiveEnsemble([0.4], rule, 0.4).advance(200)
    assert ensemble.x[0] == 0.4
    assert ensemble.cesaro_deviation()[0] == 0.0
    assert ensemble.pseudo_regret[0] == 0.0
    assert ensemble.a[0] == rule.limit_rate


def test_strong_gap_vanishes_for_constant_rule():
    ensemble = AdaptiveEnsemble(np.linspace(0.1, 0.9, 17), RateRule.constant(25.0), 0.4).advance(50)
    assert (ensemble.strong_gap(3) == 0.0).all()
    assert (ensemble.rate_gap() == 0.0).all()


def test_strong_gap_does_not_advance(rule):
    ensemble = AdaptiveEnsemble([0.3, 0.7], rule, 0.4).advance(10)
    before = ensemble.x.copy()
    ensemble.strong_gap(2)
    np.testing.assert_array_equal(ensemble.x, before)
    assert ensemble.step == 10


def test_next_shares_predicts_advance(rule):
    ensemble = AdaptiveEnsemble(np.linspace(0.1, 0.9, 9), rule, 0.4).advance(7)
    predicted = ensemble.next_shares()
    np.testing.assert_array_equal(predicted, ensemble.advance(1).x)


def test_copy_is_independent(rule):
    ensemble = AdaptiveEnsemble([0.3], rule, 0.4)
    other = ensemble.copy().advance(3)
    assert ensemble.step == 0 and other.step == 3
    assert ensemble.x[0] == 0.3


def test_margin_tracks_running_minimum(rule):
    ensemble = AdaptiveEnsemble([0.3, 0.5], rule, 0.4)
    margins = []
    for _ in range(20):
        ensemble.advance(1)
        margins.append(ensemble.margin.copy())
    for earlier, later in zip(margins, margins[1:]):
        assert (later <= earlier).all()
    assert (ensemble.margin <= np.minimum(ensemble.x, 1.0 - ensemble.x)).all()


def test_invalid_use(rule):
    with pytest.raises(DomainError):
        AdaptiveEnsemble([1.2], rule, 0.4)
    with pytest.raises(DomainError):
        AdaptiveEnsemble([0.3], rule, 0.0)
    ensemble = AdaptiveEnsemble([0.3], rule, 0.4).advance(4)
    with pytest.raises(DomainError):
        ensemble.advance_to(2)
    with pytest.raises(DomainError):
        ensemble.strong_gap(0)
