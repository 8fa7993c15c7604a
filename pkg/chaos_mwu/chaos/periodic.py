#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Period-2 and period-3 orbits of the fixed-rate map.

Roots are isolated by a sign-change scan over ROOT_SCAN_CELLS uniform cells on
[0, 1] and polished with Brent's method. Roots closer together than one cell may
merge, so the lists returned are complete only up to the scan resolution.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq

from chaos_mwu.config import config
from chaos_mwu.errors import NotFound
from chaos_mwu.dynamics.mwu_map import (
    MapParams, map_value, mwu_step_array, derivative_value, iterate_map, iterate_map_array,
)
from chaos_mwu.geometry.invariant_sets import envelope
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("periodic")

FIXED_POINT_EXCLUSION = 1e-9


@dataclass(frozen=True)
class Period2Pair:
    left: float
    right: float

    def to_dict(self) -> dict:
        return {"x_l": self.left, "x_r": self.right}


@dataclass(frozen=True)
class Period3Orbit:
    """
    A period-3 orbit (x, f(x), f^2(x)).

    ``shape`` is "standard" when f^2(x) < x < f(x) and "mirror" when
    f(x) < x < f^2(x); x is always the middle point of the orbit.
    """
    points: Tuple[float, float, float]
    rate: float
    equilibrium: float
    residual: float
    multiplier: float
    shape: str
    witness: float

    def mirrored(self) -> "Period3Orbit":
        x, y, z = self.points
        return Period3Orbit(
            points=(1.0 - x, 1.0 - y, 1.0 - z),
            rate=self.rate,
            equilibrium=1.0 - self.equilibrium,
            residual=self.residual,
            multiplier=self.multiplier,
            shape="mirror" if self.shape == "standard" else "standard",
            witness=1.0 - self.witness,
        )

    def to_dict(self) -> dict:
        return {
            "points": list(self.points),
            "rate": self.rate,
            "equilibrium": self.equilibrium,
            "residual": self.residual,
            "multiplier": self.multiplier,
            "shape": self.shape,
            "witness": self.witness,
        }


def _scan_roots(g_scalar, values, grid, xtol):
    """Brent-polished roots at sign changes and exact zeros of sampled values."""
    roots = []
    for i in np.flatnonzero(values == 0.0):
        roots.append(float(grid[i]))
    signs = np.sign(values)
    for i in np.flatnonzero(signs[:-1] * signs[1:] < 0):
        roots.append(brentq(g_scalar, float(grid[i]), float(grid[i + 1]), xtol=xtol, rtol=4 * np.finfo(float).eps))
    return sorted(roots)


def period2_points(p: MapParams, cells: int = None) -> List[Period2Pair]:
    """
    Period-2 orbits, as pairs (x_l, x_r) with x_l < b and x_r = f(x_l).

    A point x of a period-2 orbit satisfies x + f(x) = 2b; conversely any such
    x other than the fixed points has period 2.

    Args:
        p: Map parameters
        cells: Scan cells, defaults to config.ROOT_SCAN_CELLS

    Returns:
        list: Period2Pair entries, empty when there are none
    """
    cells = cells if cells is not None else config.ROOT_SCAN_CELLS
    a, b = p.rate, p.equilibrium
    grid = np.linspace(0.0, 1.0, cells + 1)
    values = grid + mwu_step_array(grid, a, b) - 2.0 * b

    def root_function(x):
        return x + map_value(x, a, b) - 2.0 * b

    pairs = []
    for x in _scan_roots(root_function, values, grid, 1e-13):
        if min(abs(x), abs(x - b), abs(1.0 - x)) < FIXED_POINT_EXCLUSION:
            continue
        if x < b:
            pairs.append(Period2Pair(left=x, right=map_value(x, a, b)))
    logger.debug(f"Found {len(pairs)} period-2 pairs at a={a}, b={b}")
    return pairs


def _li_yorke_witness(p: MapParams, cells: int):
    """A point x in (max(0, 3b - 1), b) with f^3(x) < x < f(x), or None."""
    a, b = p.rate, p.equilibrium
    lo = max(0.0, 3.0 * b - 1.0)
    if not lo < b:
        return None
    xs = np.linspace(lo, b, cells + 2)[1:-1]
    f1 = mwu_step_array(xs, a, b)
    f3 = iterate_map_array(f1, a, b, 2)
    hits = np.flatnonzero((f3 < xs) & (xs < f1))
    if hits.size == 0:
        return None
    return float(xs[hits[0]])


def _orbit_shape(points):
    """Rotate an orbit to start at its middle point; report its shape."""
    middle = sorted(points)[1]
    start = points.index(middle)
    x, y, z = points[start], points[(start + 1) % 3], points[(start + 2) % 3]
    return (x, y, z), ("standard" if y > x else "mirror")


def period3_find(p: MapParams, cells: int = None) -> Period3Orbit:
    """
    Locate a period-3 orbit inside the perpetual set.

    First requires the witness condition f^3(x) < x < f(x) on a scan of
    (max(0, 3b - 1), b), mirrored through x -> 1 - x for b > 1/2. Then scans
    f^3(x) - x for roots, drops fixed points, and keeps orbits whose residual is
    within PERIOD_TOLERANCE, whose points are pairwise DISTINCT_TOLERANCE apart
    and which lie inside the open perpetual interval. Among those the orbit with
    the smallest multiplier |(f^3)'| is returned.

    Raises:
        NotFound: monotone map, no witness, or no valid root on the grid
    """
    cells = cells if cells is not None else config.ROOT_SCAN_CELLS
    a, b = p.rate, p.equilibrium
    if a <= 4.0:
        raise NotFound(f"map is monotone at a={a!r}; no period-3 orbit", rate=a)
    if b > 0.5:
        return period3_find(p.mirrored(), cells).mirrored()

    witness = _li_yorke_witness(p, cells)
    if witness is None:
        raise NotFound(f"no witness f^3(x) < x < f(x) on ({max(0.0, 3 * b - 1)}, {b}) at a={a}", rate=a, equilibrium=b)

    env = envelope(p)
    grid = np.linspace(0.0, 1.0, cells + 1)
    values = iterate_map_array(grid, a, b, 3) - grid

    def root_function(x):
        return iterate_map(x, a, b, 3) - x

    best = None
    for x in _scan_roots(root_function, values, grid, 1e-15):
        if min(abs(x), abs(x - b), abs(1.0 - x)) < config.DISTINCT_TOLERANCE:
            continue
        y = map_value(x, a, b)
        z = map_value(y, a, b)
        residual = abs(map_value(z, a, b) - x)
        points = (x, y, z)
        if residual > config.PERIOD_TOLERANCE:
            continue
        if min(abs(x - y), abs(y - z), abs(x - z)) < config.DISTINCT_TOLERANCE:
            continue
        if not all(env.f_min < q < env.f_max for q in points):
            continue
        multiplier = abs(derivative_value(x, a, b) * derivative_value(y, a, b) * derivative_value(z, a, b))
        if best is None or multiplier < best[0]:
            best = (multiplier, points, residual)

    if best is None:
        raise NotFound(f"no period-3 root of f^3(x) - x at a={a}, b={b}", rate=a, equilibrium=b)

    multiplier, points, residual = best
    ordered, shape = _orbit_shape(list(points))
    x = ordered[0]
    y = map_value(x, a, b)
    z = map_value(y, a, b)
    logger.info(f"Period-3 orbit at a={a}, b={b}: {x:.12f} -> {y:.12f} -> {z:.12f} ({shape})")
    return Period3Orbit(
        points=(x, y, z),
        rate=a,
        equilibrium=b,
        residual=abs(map_value(z, a, b) - x),
        multiplier=multiplier,
        shape=shape,
        witness=witness,
    )
