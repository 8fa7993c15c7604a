import pytest

from chaos_mwu.dynamics import MapParams, RateRule


@pytest.fixture
def params():
    """Chaotic fixed-rate regime used throughout."""
    return MapParams(25.0, 0.4)


@pytest.fixture
def rule():
    """Gaussian bump rule between 20 and 30."""
    return RateRule.gaussian_bump(20.0, 30.0, 10.0)


@pytest.fixture
def single_thread(monkeypatch):
    monkeypatch.setenv("CHAOS_MWU_THREADS", "1")
