import json

import numpy as np
import pytest

from chaos_mwu import __version__
from chaos_mwu.errors import OutputError
from chaos_mwu.io import build_manifest, manifest_text, write_csv, read_csv, dumps_json, write_json


@pytest.fixture
def manifest():
    return build_manifest("simulate", {"b": 0.4, "a": 25.0, "n": 3}, seed=11)


def test_manifest(manifest):
    assert manifest["tool"] == "chaos-mwu"
    assert manifest["version"] == __version__
    assert manifest["params"] == {"a": 25.0, "b": 0.4, "n": 3}
    text = manifest_text(manifest)
    assert " " not in text
    assert list(json.loads(text)) == sorted(manifest)


def test_csv_round_trip(tmp_path, manifest):
    path = tmp_path / "trace.csv"
    count = write_csv(path, ["step", "x", "ok"], [(0, 0.1, True), (1, 0.25, False)], manifest)
    assert count == 2
    loaded, header, rows = read_csv(path)
    assert loaded == manifest
    assert header == ["step", "x", "ok"]
    assert rows == [["0", "0.10000000000000001", "true"], ["1", "0.25", "false"]]
    assert float(rows[0][1]) == 0.1


def test_csv_without_manifest(tmp_path):
    path = tmp_path / "plain.csv"
    write_csv(path, ["x"], [(0.5,)])
    loaded, header, rows = read_csv(path)
    assert loaded is None
    assert rows == [["0.5"]]


def test_csv_is_byte_stable(tmp_path, manifest):
    rows = [(i, np.float64(i) / 7.0) for i in range(50)]
    write_csv(tmp_path / "a.csv", ["i", "v"], rows, manifest)
    write_csv(tmp_path / "b.csv", ["i", "v"], rows, manifest)
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert b"\r\n" not in (tmp_path / "a.csv").read_bytes()


def test_write_creates_parent_directories(tmp_path):
    path = tmp_path / "nested" / "dir" / "out.csv"
    write_csv(path, ["x"], [])
    assert path.exists()


def test_unwritable_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OutputError):
        write_csv(blocker / "out.csv", ["x"], [(1,)])
    with pytest.raises(OutputError):
        write_json(blocker / "out.json", {"x": 1})
    with pytest.raises(OutputError):
        read_csv(tmp_path / "missing.csv")


def test_json_document(tmp_path, manifest):
    text = dumps_json({"z": 0.1, "a": [1, 2.5], "flag": True, "none": None}, manifest)
    assert text.endswith("\n")
    body = json.loads(text)
    assert list(body) == sorted(body)
    assert body["z"] == 0.1
    assert body["a"] == [1, 2.5]
    assert "\"z\": 0.1\n" in text
    assert body["flag"] is True and body["none"] is None
    assert body["manifest"] == manifest
    path = tmp_path / "report.json"
    write_json(path, {"z": 0.1}, manifest)
    assert path.read_text(encoding="utf-8") == dumps_json({"z": 0.1}, manifest)
