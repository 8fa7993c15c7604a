import pytest

from chaos_mwu.errors import DomainError, OutputError
from chaos_mwu.io import parse_config_text, read_config


def test_parse_config_text():
    text = "# run settings\nb = 0.4\n--burn-in = 100   # discard\n\namin=20\n"
    assert parse_config_text(text) == {"b": "0.4", "burn_in": "100", "amin": "20"}


@pytest.mark.parametrize("text", ["b 0.4", " = 3"])
def test_malformed_config(text):
    with pytest.raises(DomainError):
        parse_config_text(text)


def test_read_config(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("a = 25\nx0 = 0.3\n", encoding="utf-8")
    assert read_config(path) == {"a": "25", "x0": "0.3"}


def test_missing_config(tmp_path):
    with pytest.raises(OutputError):
        read_config(tmp_path / "absent.cfg")
