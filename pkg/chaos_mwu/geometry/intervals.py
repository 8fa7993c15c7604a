#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Closed intervals and their exact images under the MWU map.

The map has at most two turning points (x_max and x_min, present when a > 4), so
the image of a closed interval is the hull of the values at its endpoints and at
whichever turning points it contains. Composing images step by step therefore
gives the exact n-fold image, up to one rounding per evaluation.
"""

from dataclasses import dataclass

import numpy as np

from chaos_mwu.errors import DomainError
from chaos_mwu.dynamics.mwu_map import MapParams, map_value, critical_points
from chaos_mwu.utils.number_format import format_interval


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo != self.lo or self.hi != self.hi:
            raise DomainError("interval endpoint is NaN")
        if self.lo > self.hi:
            raise DomainError(f"inverted interval [{self.lo!r}, {self.hi!r}]")

    @property
    def diam(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains_point(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def interior_contains(self, x: float) -> bool:
        return self.lo < x < self.hi

    def mirrored(self) -> "Interval":
        """Image under x -> 1 - x."""
        return Interval(1.0 - self.hi, 1.0 - self.lo)

    def widened(self, amount: float) -> "Interval":
        return Interval(self.lo - amount, self.hi + amount)

    def to_dict(self) -> dict:
        return format_interval(self.lo, self.hi)


def as_interval(value) -> Interval:
    """Accept an Interval or a (lo, hi) pair."""
    if isinstance(value, Interval):
        return value
    lo, hi = value
    return Interval(float(lo), float(hi))


def interval_image(interval, p: MapParams) -> Interval:
    """
    Exact image of a closed interval under f(., a, b).

    Args:
        interval: Interval or (lo, hi) inside [0, 1]
        p: Map parameters

    Returns:
        Interval: hull of f at the endpoints and at the contained critical points
    """
    I = as_interval(interval)
    if I.lo < 0.0 or I.hi > 1.0:
        raise DomainError(f"interval [{I.lo!r}, {I.hi!r}] leaves [0, 1]")
    a, b = p.rate, p.equilibrium
    values = [map_value(I.lo, a, b), map_value(I.hi, a, b)]
    if a > 4.0:
        for c in critical_points(a):
            if I.lo < c < I.hi:
                values.append(map_value(c, a, b))
    return Interval(min(values), max(values))


def image_n(interval, p: MapParams, n: int) -> Interval:
    """n-fold exact image."""
    I = as_interval(interval)
    for _ in range(n):
        I = interval_image(I, p)
    return I


def hausdorff(first, second) -> float:
    """Hausdorff distance between two closed intervals."""
    I, J = as_interval(first), as_interval(second)
    return max(abs(I.lo - J.lo), abs(I.hi - J.hi))


def contains(outer, inner, tol: float = 0.0) -> bool:
    """True when inner lies in outer widened by tol."""
    O, I = as_interval(outer), as_interval(inner)
    return O.lo - tol <= I.lo and I.hi <= O.hi + tol


def disjoint_gap(first, second) -> float:
    """Distance between two intervals, negative when they overlap."""
    I, J = as_interval(first), as_interval(second)
    return max(J.lo - I.hi, I.lo - J.hi)


def sample_hull_cover(images, target, tol: float) -> bool:
    """
    Whether a sampled continuous image covers a target interval.

    ``images`` are the values of a continuous function at increasing sample
    positions. The hull of each consecutive pair lies inside the true image, so
    the union of those hulls widened by ``tol`` is checked for covering the
    whole of ``target`` with no gap.

    Args:
        images: 1-D array of image values ordered by sample position
        target: Interval to cover
        tol: Widening applied to every pair hull

    Returns:
        bool: True if the widened union contains the target
    """
    T = as_interval(target)
    values = np.asarray(images, dtype=float)
    if values.size == 0:
        return False
    if values.size == 1:
        return values[0] - tol <= T.lo and T.hi <= values[0] + tol
    los = np.minimum(values[:-1], values[1:]) - tol
    his = np.maximum(values[:-1], values[1:]) + tol
    order = np.argsort(los, kind="stable")
    los = los[order]
    reach = np.maximum.accumulate(his[order])

    first = np.searchsorted(los, T.lo, side="right") - 1
    if first < 0 or reach[first] < T.lo:
        return False
    if reach[-1] < T.hi:
        return False
    gaps = (los[1:] > reach[:-1]) & (reach[:-1] < T.hi) & (los[1:] > T.lo)
    return not bool(gaps.any())


def cover_grid(target, points: int):
    """Equispaced grid points on a target interval."""
    T = as_interval(target)
    return np.linspace(T.lo, T.hi, max(int(points), 2))


def grid_cover(images, target, points: int, tol: float):
    """
    Grid cover test for a sampled continuous image.

    ``points`` equispaced grid points are laid on ``target``. A point counts as covered
    when some sampled image point lies within ``tol`` of it, or when it lies
    between the images of two neighbouring samples: that pair's gap is the local
    sample-image spacing and bounds the point's distance to either image.

    Args:
        images: 1-D array of image values ordered by sample position
        target: Interval to cover
        points: Number of grid points
        tol: Nominal sample spacing

    Returns:
        tuple: (every point covered, distance from each point to its nearest image point)
    """
    marks = cover_grid(target, points)
    values = np.asarray(images, dtype=float)
    if values.size == 0:
        return False, np.full(marks.shape, np.inf)
    ordered = np.sort(values)
    idx = np.searchsorted(ordered, marks)
    left = ordered[np.clip(idx - 1, 0, ordered.size - 1)]
    right = ordered[np.clip(idx, 0, ordered.size - 1)]
    nearest = np.minimum(np.abs(marks - left), np.abs(marks - right))
    covered = nearest <= tol
    if values.size > 1:
        los = np.minimum(values[:-1], values[1:])
        his = np.maximum(values[:-1], values[1:])
        order = np.argsort(los, kind="stable")
        los = los[order]
        reach = np.maximum.accumulate(his[order])
        pos = np.searchsorted(los, marks, side="right") - 1
        covered |= (pos >= 0) & (reach[np.clip(pos, 0, None)] >= marks)
    return bool(covered.all()), nearest
