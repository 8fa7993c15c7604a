import numpy as np
import pytest

from chaos_mwu.diagnostics import (
    QUANTITIES, ConvergenceReport, sample_set, convergence_suite, pseudo_regret_decay, rate_uniform_convergence,
    cesaro_mean, strong_convergence_gap, decay_trend,
)
from chaos_mwu.dynamics import RateRule
from chaos_mwu.errors import DomainError


def test_sample_set_is_reproducible():
    first = sample_set(seed=7)
    assert len(first) == 128
    assert first[0] == 0.1 and first[63] == 0.9
    assert ((first >= 0.1) & (first <= 0.9)).all()
    np.testing.assert_array_equal(first, sample_set(seed=7))
    assert not np.array_equal(first[64:], sample_set(seed=8)[64:])


def test_sample_set_range():
    with pytest.raises(DomainError):
        sample_set(0.0, 0.5)


@pytest.mark.parametrize("x0_set,horizons", [([0.0, 0.5], [10]), ([0.3], [0]), ([], [10])])
def test_invalid_inputs(rule, x0_set, horizons):
    with pytest.raises(DomainError):
        convergence_suite(x0_set, rule, 0.4, horizons)


def test_suite_layout(rule):
    suite = convergence_suite(sample_set(grid=8, random=8), rule, 0.4, horizons=(500, 100), k=2)
    assert suite.horizons == [100, 500]
    for quantity in QUANTITIES:
        assert [r.horizon for r in suite.reports[quantity]] == [100, 500]
        assert len(suite.reports[quantity][0].values) == 16
    assert suite.reports["rate_gap"][0].reference == 30.0
    assert suite.reports["cesaro_mean"][0].reference == 0.4
    assert len(list(suite.rows())) == 8
    info = suite.to_dict()
    assert set(info["trend"]) == set(QUANTITIES)


def test_regret_bound_holds(rule):
    suite = convergence_suite(sample_set(grid=16, random=16), rule, 0.4, horizons=(10, 100, 1000))
    assert all(suite.bound_holds)
    assert min(suite.bound_slack) >= 0.0
    assert suite.interiority > 0.0


def test_constant_rule_has_no_rate_or_strong_gap():
    suite = convergence_suite(np.linspace(0.1, 0.9, 9), RateRule.constant(25.0), 0.4, horizons=(50, 200), k=3)
    assert suite.sups("rate_gap") == [0.0, 0.0]
    assert suite.sups("strong_gap") == [0.0, 0.0]
    assert suite.gap_ratio == [0.0, 0.0]
    assert all(suite.bound_holds)


def test_equilibrium_sample_has_exact_cesaro_mean(rule):
    reports = cesaro_mean([0.4], rule, 0.4, horizons=(10, 1000))
    assert [r.sup_value for r in reports] == [0.0, 0.0]


def test_wrappers_agree_with_suite(rule):
    x0 = [0.2, 0.6]
    suite = convergence_suite(x0, rule, 0.4, horizons=(100,), k=2)
    assert pseudo_regret_decay(x0, rule, 0.4, (100,))[0].sup_value == suite.sups("pseudo_regret")[0]
    assert rate_uniform_convergence(x0, rule, 0.4, (100,))[0].sup_value == suite.sups("rate_gap")[0]
    assert strong_convergence_gap(x0, rule, 0.4, 2, (100,))[0].sup_value == suite.sups("strong_gap")[0]


def test_report_points_at_worst_sample(rule):
    x0 = np.array([0.2, 0.6, 0.75])
    report = pseudo_regret_decay(x0, rule, 0.4, (50,))[0]
    assert report.sup_value == pytest.approx(np.abs(report.values).max())
    assert report.attained_at == x0[report.argmax]


def test_decay_trend():
    reports = [
        ConvergenceReport("pseudo_regret", n, np.zeros(1), sup, 0.0, 0)
        for n, sup in [(10, 1.0), (100, 0.1), (1000, 0.01)]
    ]
    trend = decay_trend(reports)
    assert trend["nonincreasing"]
    assert trend["slope"] == pytest.approx(-1.0)
    assert trend["ratios"] == pytest.approx([0.1, 0.1])


def test_decay_trend_with_zero_sups():
    reports = [ConvergenceReport("rate_gap", n, np.zeros(1), 0.0, 30.0, 0) for n in (10, 100)]
    assert decay_trend(reports) == {"nonincreasing": True, "slope": None, "ratios": [None]}


@pytest.mark.slow
def test_convergence_at_a_million_steps(rule):
    suite = convergence_suite(sample_set(), rule, 0.4, horizons=(1000, 1000000), k=2)
    for quantity in QUANTITIES:
        assert suite.sups(quantity)[-1] <= 1e-3
    assert all(suite.bound_holds)


def test_convergence_at_half():
    rule = RateRule.gaussian_bump(20.0, 30.0, 10.0)
    suite = convergence_suite(sample_set(grid=16, random=16), rule, 0.5, horizons=(100, 1000, 10000))
    assert all(suite.bound_holds)
    regret = suite.sups("pseudo_regret")
    assert regret[-1] <= regret[0]
    assert suite.interiority > 0.0
