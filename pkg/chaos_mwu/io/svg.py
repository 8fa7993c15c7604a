#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""SVG figures for bifurcation scans and cobweb diagrams."""

import matplotlib
matplotlib.use("Agg")
from matplotlib.figure import Figure

from chaos_mwu.errors import OutputError
from chaos_mwu.io.writers import manifest_text
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("svg")

# fixed id salt so repeated runs produce identical files
matplotlib.rcParams["svg.hashsalt"] = "chaos-mwu"


def _save(fig: Figure, path, manifest: dict):
    metadata = {"Date": None, "Creator": "chaos-mwu"}
    if manifest is not None:
        metadata["Description"] = manifest_text(manifest)
    try:
        fig.savefig(path, format="svg", metadata=metadata)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote figure to {path}")


def scatter_svg(path, xs, ys, manifest: dict = None, xlabel: str = "param", ylabel: str = "x",
                title: str = None) -> None:
    """Scatter plot of (xs, ys), e.g. a bifurcation diagram."""
    fig = Figure(figsize=(8, 5))
    ax = fig.add_subplot(111)
    ax.scatter(xs, ys, s=0.2, c="black", marker=".", linewidths=0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_ylim(0.0, 1.0)
    if title:
        ax.set_title(title)
    _save(fig, path, manifest)


def cobweb_svg(path, segments, curve, manifest: dict = None, title: str = None) -> None:
    """
    Cobweb diagram: the diagonal, the limit-map curve and the orbit polyline.

    Args:
        path: Output file
        segments: (x_from, y_from, x_to, y_to) tuples of the orbit polyline
        curve: (x, f(x)) pairs of the limit map
        manifest: Run manifest
    """
    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot(111)
    ax.plot([0.0, 1.0], [0.0, 1.0], color="grey", linewidth=0.8)
    if len(curve):
        cx, cy = zip(*curve)
        ax.plot(cx, cy, color="tab:blue", linewidth=1.0)
    if len(segments):
        xs = [segments[0][0]] + [s[2] for s in segments]
        ys = [segments[0][1]] + [s[3] for s in segments]
        ax.plot(xs, ys, color="tab:red", linewidth=0.5)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel("x_n")
    ax.set_ylabel("x_{n+1}")
    if title:
        ax.set_title(title)
    _save(fig, path, manifest)
