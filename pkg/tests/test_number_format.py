import numpy as np
import pytest

from chaos_mwu.utils import format_real, parse_real, format_interval, json_real, to_jsonable


@pytest.mark.parametrize("value,text", [
    (0.1, "0.10000000000000001"),
    (0.5, "0.5"),
    (25, "25"),
    (-0.0, "0"),
    (float("nan"), "nan"),
    (float("inf"), "inf"),
    (float("-inf"), "-inf"),
    (np.float64(1.0) / 3.0, "0.33333333333333331"),
])
def test_format_real(value, text):
    assert format_real(value) == text


@pytest.mark.parametrize("value", [0.1, 1.0 / 3.0, 1e-300, 123456.789, 2.0 ** -1074])
def test_format_real_is_exact(value):
    assert float(format_real(value)) == value


def test_parse_real():
    assert parse_real("1_000") == 1000.0
    assert parse_real(" 0.25 ") == 0.25
    assert parse_real(3) == 3.0
    assert parse_real("abc", default=-1.0) == -1.0
    assert parse_real("", default=None) is None
    assert parse_real(None, default=2.0) == 2.0


def test_format_interval():
    assert format_interval(0.25, 0.5) == {"lo": 0.25, "hi": 0.5}
    assert format_interval(0.0, float("inf")) == {"lo": 0.0, "hi": "inf"}


@pytest.mark.parametrize("value,expected", [
    (0.1, 0.1),
    (np.float64(1.0) / 3.0, 1.0 / 3.0),
    (-0.0, 0.0),
    (float("nan"), "nan"),
    (float("-inf"), "-inf"),
])
def test_json_real(value, expected):
    result = json_real(value)
    assert result == expected
    assert type(result) is type(expected)


def test_to_jsonable():
    value = {"arr": np.array([0.5, 1.0]), "pair": (1, 0.25), 3: True, "none": None, "text": "x"}
    assert to_jsonable(value) == {
        "arr": [0.5, 1.0],
        "pair": [1, 0.25],
        "3": True,
        "none": None,
        "text": "x",
    }
