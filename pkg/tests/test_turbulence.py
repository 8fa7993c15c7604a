import pytest

from chaos_mwu.chaos import build_turbulent_pair, coverage_margin, refine_nested, period3_find
from chaos_mwu.chaos import turbulence
from chaos_mwu.chaos.turbulence import classify, crossings, bisect_level
from chaos_mwu.dynamics import MapParams
from chaos_mwu.errors import AnalysisFailure, DomainError
from chaos_mwu.geometry import envelope


@pytest.fixture(scope="module")
def pair():
    return build_turbulent_pair(MapParams(25.0, 0.4))


def test_turbulent_pair(pair):
    env = envelope(pair.params)
    assert pair.gap > 0.0
    assert pair.margin > 0.0
    assert coverage_margin(pair) == pair.margin
    for I in (pair.J, pair.K):
        assert env.f_min < I.lo < I.hi < env.f_max
    assert pair.hull.lo == min(pair.J.lo, pair.K.lo)


def test_turbulent_pair_for_mirror_shape():
    p = MapParams(25.0, 0.6)
    pair = build_turbulent_pair(p, period3_find(p))
    assert pair.equilibrium == 0.6
    assert pair.gap > 0.0
    assert coverage_margin(pair) > 0.0


def test_pair_serializes(pair):
    info = pair.to_dict()
    assert set(info) == {"J", "K", "rate", "equilibrium", "period3_witness", "margin", "gap"}
    assert set(info["J"]) == {"lo", "hi"}


def test_classify_and_crossings():
    assert classify([0.0, 0.5, 1.0], 0.2, 0.8) == [-1, 0, 1]
    assert crossings([-1, 0, 0, 1]) == [(0, 3)]
    assert crossings([-1, 1, -1]) == [(0, 1), (1, 2)]
    assert crossings([-1, 0, -1, 0, 0]) == []


def test_bisect_level_keeps_requested_side():
    low = bisect_level(lambda t: t, 0.0, 1.0, 0.3, True, 1e-12)
    high = bisect_level(lambda t: t, 0.0, 1.0, 0.3, False, 1e-12)
    assert 0.3 - 1e-12 <= low < 0.3 < high <= 0.3 + 1e-12


def _check_family(pair, family, depth):
    assert family.depth == depth
    v0 = family.V[0][1] - family.V[0][0]
    u0 = family.U[0][1] - family.U[0][0]
    for k in range(depth + 1):
        assert family.margins[k] > 0
        assert family.V[k][1] - family.V[k][0] <= v0 / 2 ** k
        assert family.U[k][1] - family.U[k][0] <= u0 / 2 ** k
    for levels in (family.V, family.U):
        for outer, inner in zip(levels, levels[1:]):
            assert outer[0] <= inner[0] < inner[1] <= outer[1]


def test_nested_family_shallow(pair):
    _check_family(pair, refine_nested(pair, 3), 3)


@pytest.mark.slow
def test_nested_family_deep(pair):
    _check_family(pair, refine_nested(pair, 12), 12)


def test_nested_family_rejects_negative_depth(pair):
    with pytest.raises(DomainError):
        refine_nested(pair, -1)


def test_nested_family_rejects_overlapping_preimages(pair, monkeypatch):
    monkeypatch.setattr(turbulence, "_subinterval", lambda system, a, interval, steps, target, grid: interval)
    with pytest.raises(AnalysisFailure) as info:
        refine_nested(pair, 2)
    assert info.value.context["level"] == 0


def test_nested_family_rejects_slow_shrinking(pair, monkeypatch):
    def shrink_slowly(system, a, interval, steps, target, grid):
        lo, hi = interval
        width = hi - lo
        if target[0] == pair.K.lo:
            return (lo, lo + 0.55 * width)
        return (lo + 0.6 * width, hi + 0.6 * width)

    monkeypatch.setattr(turbulence, "_subinterval", shrink_slowly)
    with pytest.raises(AnalysisFailure) as info:
        refine_nested(pair, 2)
    assert info.value.context["level"] == 1
