from chaos_mwu.io import build_manifest, scatter_svg, cobweb_svg


def test_scatter_svg_is_reproducible(tmp_path):
    manifest = build_manifest("bifurcation", {"a": 6.0}, seed=1)
    xs = [0.1, 0.2, 0.3]
    ys = [0.4, 0.5, 0.6]
    scatter_svg(tmp_path / "a.svg", xs, ys, manifest, title="scan")
    scatter_svg(tmp_path / "b.svg", xs, ys, manifest, title="scan")
    first = (tmp_path / "a.svg").read_bytes()
    assert first == (tmp_path / "b.svg").read_bytes()
    text = first.decode("utf-8")
    assert "<svg" in text
    assert "bifurcation" in text


def test_cobweb_svg(tmp_path):
    path = tmp_path / "cobweb.svg"
    segments = [(0.3, 0.3, 0.3, 0.6), (0.3, 0.6, 0.6, 0.6)]
    curve = [(0.0, 0.0), (0.5, 0.7), (1.0, 1.0)]
    cobweb_svg(path, segments, curve, None)
    assert path.read_text(encoding="utf-8").lstrip().startswith("<?xml")
    cobweb_svg(tmp_path / "empty.svg", [], [], None)
    assert (tmp_path / "empty.svg").exists()
