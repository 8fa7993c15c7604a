import pytest

from chaos_mwu.dynamics import MapParams
from chaos_mwu.errors import DomainError, UNBRACKETED
from chaos_mwu.geometry import THRESHOLD_NAMES, rate_grid, estimate_thresholds
from chaos_mwu.geometry.thresholds import HALF_UNDEFINED, grid_properties, _suffix_estimate, _violations


def test_rate_grid():
    assert rate_grid(4.1, 4.5, 0.1) == [4.1, 4.2, 4.3, 4.4, 4.5]
    assert rate_grid(10.0, 10.0, 1.0) == [10.0]


@pytest.mark.parametrize("grid", [(4.0, 10.0, 0.1), (5.0, 4.5, 0.1), (5.0, 6.0, 0.0)])
def test_invalid_rate_grid(grid):
    with pytest.raises(DomainError):
        rate_grid(*grid)


def test_suffix_estimate():
    rates = [1.0, 2.0, 3.0, 4.0]
    assert _suffix_estimate(rates, [True] * 4) == 1.0
    assert _suffix_estimate(rates, [False, False, True, True]) == 3.0
    assert _suffix_estimate(rates, [False, True, False, True]) == 4.0
    assert _suffix_estimate(rates, [True, True, True, False]) is UNBRACKETED


def test_violations():
    assert _violations([1.0, 2.0, 3.0, 4.0], [False, True, False, True]) == [3.0]
    assert _violations([1.0, 2.0, 3.0], [False, False, True]) == []


def test_properties_in_chaotic_regime(params):
    properties = grid_properties(params)
    assert set(properties) == set(THRESHOLD_NAMES)
    assert properties["a_b"]
    assert properties["s_b"]
    assert properties["k_b"]
    assert properties["u_b"]


def test_properties_skip():
    properties = grid_properties(MapParams(25.0, 0.5), skip=HALF_UNDEFINED)
    assert not set(HALF_UNDEFINED) & set(properties)


def test_estimates_on_a_small_grid(single_thread):
    estimates = estimate_thresholds(0.4, (20.0, 25.0, 1.0))
    assert estimates.rates == [20.0, 21.0, 22.0, 23.0, 24.0, 25.0]
    for name in THRESHOLD_NAMES:
        value = estimates[name]
        assert value is UNBRACKETED or value in estimates.rates
        assert estimates.is_bracketed(name) == (value is not UNBRACKETED)
    assert estimates["a_b"] == 20.0
    info = estimates.to_dict()
    assert info["grid"]["points"] == 6
    assert not info["flags"]


def test_half_equilibrium_is_flagged():
    estimates = estimate_thresholds(0.5, (10.0, 12.0, 1.0), max_workers=2)
    for name in HALF_UNDEFINED:
        assert estimates[name] is UNBRACKETED
    info = estimates.to_dict()
    assert info["flags"]
    assert set(HALF_UNDEFINED) <= set(info["unbracketed"])
    assert all(info["estimates"][name] is None for name in HALF_UNDEFINED)


def test_grid_must_start_above_four():
    with pytest.raises(DomainError):
        estimate_thresholds(0.4, (3.0, 10.0, 1.0))
