import numpy as np
import pytest

from chaos_mwu.dynamics import MapParams, RateRule, iterate_fixed, iterate_adaptive, closed_form_check
from chaos_mwu.errors import DomainError


def test_fixed_trace_layout(params):
    trace = iterate_fixed(0.3, params, 50, burn_in=10)
    assert len(trace) == 40
    assert trace.steps[0] == 10 and trace.steps[-1] == 49
    assert trace.final_state.step == 50
    assert not trace.is_adaptive
    assert trace.equilibrium == 0.4
    step, x, a, r = next(trace.records())
    assert (step, a) == (10, 25.0)


@pytest.mark.parametrize("x0", [0.0, 0.4, 1.0])
def test_fixed_points_persist(params, x0):
    trace = iterate_fixed(x0, params, 100)
    assert (trace.shares == x0).all()
    assert trace.final_state.share == x0


def test_small_rate_converges_to_equilibrium():
    trace = iterate_fixed(0.9, MapParams(3.0, 0.4), 100000, burn_in=99999)
    assert abs(trace.final_state.share - 0.4) <= 1e-9


def test_constant_rule_reproduces_fixed_map(params):
    fixed = iterate_fixed(0.3, params, 300)
    adaptive = iterate_adaptive(0.3, RateRule.constant(params.a), params.b, 300)
    np.testing.assert_array_equal(fixed.shares, adaptive.shares)
    assert adaptive.is_adaptive


def test_adaptive_initial_state(rule):
    trace = iterate_adaptive(0.3, rule, 0.4, 10)
    first = trace.state_at(0)
    assert first.rate == rule.limit_rate
    assert first.pseudo_regret == 0.0
    assert first.cum_weighted_regret == 0.0
    second = trace.state_at(1)
    assert second.cum_weighted_regret == pytest.approx(30.0 * (0.3 - 0.4))
    assert second.pseudo_regret == pytest.approx(second.cum_weighted_regret)
    assert second.rate == pytest.approx(rule(second.pseudo_regret))


def test_closed_form_holds_along_adaptive_orbit(rule):
    trace = iterate_adaptive(0.3, rule, 0.4, 1000)
    assert closed_form_check(trace) <= 1e-10


def test_closed_form_needs_interior_start(params):
    with pytest.raises(DomainError):
        closed_form_check(iterate_fixed(0.0, params, 5))


@pytest.mark.parametrize("x0,n,burn_in", [(1.5, 10, 0), (float("nan"), 10, 0), (0.3, -1, 0), (0.3, 10, -2)])
def test_invalid_runs(params, x0, n, burn_in):
    with pytest.raises(DomainError):
        iterate_fixed(x0, params, n, burn_in)


def test_adaptive_rejects_boundary_equilibrium(rule):
    with pytest.raises(DomainError):
        iterate_adaptive(0.3, rule, 1.0, 10)


def test_burn_in_beyond_horizon_keeps_nothing(params):
    trace = iterate_fixed(0.3, params, 5, burn_in=10)
    assert len(trace) == 0
    assert trace.final_state.step == 5
