#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Perpetual set F(a), the adaptive absorbing set Delta, absorption times and
volume expansion, for the fixed-rate map and for the adaptive system.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from chaos_mwu.config import config
from chaos_mwu.errors import DomainError, NotAbsorbed, NotExpanded
from chaos_mwu.dynamics.mwu_map import MapParams, map_value, mwu_step_array, derivative_array, critical_points
from chaos_mwu.dynamics.rate_rule import RateRule
from chaos_mwu.dynamics.ensemble import AdaptiveEnsemble
from chaos_mwu.geometry.intervals import (
    Interval, as_interval, interval_image, hausdorff, contains, grid_cover,
)
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("invariant_sets")


@dataclass(frozen=True)
class Envelope:
    """Critical points and the perpetual interval F(a) = [f_min, f_max]."""
    rate: float
    equilibrium: float
    x_max: float
    x_min: float
    f_max: float
    f_min: float
    ordered: bool

    @property
    def perpetual(self) -> Interval:
        return Interval(self.f_min, self.f_max)

    def to_dict(self) -> dict:
        return {
            "rate": self.rate,
            "equilibrium": self.equilibrium,
            "x_max": self.x_max,
            "x_min": self.x_min,
            "f_max": self.f_max,
            "f_min": self.f_min,
            "ordered": self.ordered,
            "perpetual": self.perpetual.to_dict(),
        }


@dataclass(frozen=True)
class PerpetualReport:
    forward_invariant: bool
    surjective: bool
    margin: float
    image: Interval
    envelope: Envelope

    def to_dict(self) -> dict:
        return {
            "forward_invariant": self.forward_invariant,
            "surjective": self.surjective,
            "margin": self.margin,
            "image": self.image.to_dict(),
            "envelope": self.envelope.to_dict(),
        }


@dataclass(frozen=True)
class DeltaSet:
    """Absorbing set of the adaptive system: hull of F(a) over the rate envelope."""
    lo: float
    hi: float
    widening: float = 0.0
    monotone: bool = True
    grid: int = 1

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "widening": self.widening,
            "monotone": self.monotone,
            "grid": self.grid,
        }


@dataclass(frozen=True)
class AbsorptionReport:
    steps: int
    interiority: float
    samples: int
    n_cap: int
    target: Interval

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "interiority": self.interiority,
            "samples": self.samples,
            "n_cap": self.n_cap,
            "target": self.target.to_dict(),
        }


@dataclass(frozen=True)
class ExpansionReport:
    steps: int
    distance: float
    target: Interval
    samples: int = 0
    covers_lower: Optional[bool] = None
    lower_target: Optional[Interval] = None
    tolerance: float = 0.0
    persists_to: Optional[int] = None
    grid_distance: Optional[float] = None

    def to_dict(self) -> dict:
        info = {
            "steps": self.steps,
            "distance": self.distance,
            "target": self.target.to_dict(),
            "samples": self.samples,
            "tolerance": self.tolerance,
        }
        if self.persists_to is not None:
            info["persists_to"] = self.persists_to
        if self.grid_distance is not None:
            info["grid_distance"] = self.grid_distance
        if self.lower_target is not None:
            info["covers_lower"] = self.covers_lower
            info["lower_target"] = self.lower_target.to_dict()
        return info


def envelope(p: MapParams) -> Envelope:
    """
    Critical points, their values and the ordering flag
    f_min < x_max < b < x_min < f_max.

    Raises:
        NoCriticalPoints: for a <= 4
    """
    a, b = p.rate, p.equilibrium
    x_max, x_min = critical_points(a)
    f_max = map_value(x_max, a, b)
    f_min = map_value(x_min, a, b)
    ordered = f_min < x_max < b < x_min < f_max
    return Envelope(rate=a, equilibrium=b, x_max=x_max, x_min=x_min,
                    f_max=f_max, f_min=f_min, ordered=ordered)


def envelope_arrays(rates, b: float):
    """Vectorized (f_min, f_max) over an array of rates > 4."""
    rates = np.asarray(rates, dtype=float)
    if (rates <= 4.0).any():
        raise DomainError("envelope needs every rate above 4")
    r = np.sqrt(0.25 - 1.0 / rates)
    f_max = mwu_step_array(0.5 - r, rates, b)
    f_min = mwu_step_array(0.5 + r, rates, b)
    return f_min, f_max


def check_perpetual(p: MapParams, tol: float = None) -> PerpetualReport:
    """
    Test forward invariance and surjectivity of f on F(a) via the exact image.

    Args:
        p: Map parameters with a > 4
        tol: Inclusion tolerance, defaults to config.SET_TOLERANCE

    Returns:
        PerpetualReport: both flags and the Hausdorff distance image <-> F(a)
    """
    tol = tol if tol is not None else config.SET_TOLERANCE
    env = envelope(p)
    F = env.perpetual
    image = interval_image(F, p)
    return PerpetualReport(
        forward_invariant=contains(F, image, tol),
        surjective=contains(image, F, tol),
        margin=hausdorff(image, F),
        image=image,
        envelope=env,
    )


def monotone_attraction_check(p: MapParams, samples: int = 1000) -> bool:
    """
    Outside F(a) orbits move monotonically into it: f(x) in (x, f_max] below
    f_min and f(x) in [f_min, x) above f_max, on sampled points.
    """
    env = envelope(p)
    a, b = p.rate, p.equilibrium
    tol = config.SET_TOLERANCE
    if env.f_min > 0.0:
        below = np.linspace(0.0, env.f_min, samples + 2)[1:-1]
        images = mwu_step_array(below, a, b)
        if not ((images > below) & (images <= env.f_max + tol)).all():
            return False
    if env.f_max < 1.0:
        above = np.linspace(env.f_max, 1.0, samples + 2)[1:-1]
        images = mwu_step_array(above, a, b)
        if not ((images < above) & (images >= env.f_min - tol)).all():
            return False
    return True


def monotone_map_check(p: MapParams, samples: int = 10001) -> bool:
    """f'(x) >= 0 on an equispaced grid of [0, 1]; holds for every b when a <= 4."""
    grid = np.linspace(0.0, 1.0, samples)
    return bool((derivative_array(grid, p.rate, p.equilibrium) >= 0.0).all())


def _strict_interior(I: Interval, what: str):
    if not (0.0 < I.lo and I.hi < 1.0):
        raise DomainError(f"{what} [{I.lo!r}, {I.hi!r}] must lie strictly inside (0, 1)")


def absorption_time_fixed(interval, p: MapParams, n_cap: int = 10000) -> int:
    """
    Steps until the exact image of an interval enters F(a).

    Args:
        interval: Interval strictly inside (0, 1)
        p: Map parameters with a > 4
        n_cap: Step cap

    Returns:
        int: smallest n <= n_cap with f^n(I) inside F(a)

    Raises:
        DomainError: interval touches 0 or 1
        NotAbsorbed: cap reached
    """
    I = as_interval(interval)
    _strict_interior(I, "absorption interval")
    F = envelope(p).perpetual
    tol = config.SET_TOLERANCE
    current = I
    for n in range(n_cap + 1):
        if contains(F, current, tol):
            logger.debug(f"Interval [{I.lo}, {I.hi}] absorbed after {n} steps at a={p.rate}")
            return n
        current = interval_image(current, p)
    raise NotAbsorbed(f"interval not absorbed into F(a) within {n_cap} steps",
                      n_cap=n_cap, image=current)


def delta_set(rule: RateRule, b: float, grid: int = None) -> DeltaSet:
    """
    Hull of F(a) over a in [a_min, a_max].

    When f_min is nonincreasing and f_max nondecreasing across the grid the hull
    is F(a_max), evaluated exactly. Otherwise the grid extrema are widened by the
    largest change between neighbouring grid rates.

    Raises:
        DomainError: a_min <= 4 or b outside (0, 1)
    """
    grid = grid if grid is not None else config.DELTA_GRID
    if not rule.a_min > 4.0:
        raise DomainError(f"absorbing set needs a_min > 4, got {rule.a_min!r}")
    if not 0.0 < b < 1.0:
        raise DomainError(f"equilibrium must lie in (0, 1), got {b!r}")
    if rule.a_min == rule.a_max:
        env = envelope(MapParams(rule.a_max, b))
        return DeltaSet(lo=env.f_min, hi=env.f_max, widening=0.0, monotone=True, grid=1)

    rates = np.linspace(rule.a_min, rule.a_max, max(int(grid), 2))
    f_min, f_max = envelope_arrays(rates, b)
    monotone = bool((np.diff(f_min) <= 0.0).all() and (np.diff(f_max) >= 0.0).all())
    if monotone:
        env = envelope(MapParams(rule.a_max, b))
        return DeltaSet(lo=env.f_min, hi=env.f_max, widening=0.0, monotone=True, grid=len(rates))

    widening = float(max(np.abs(np.diff(f_min)).max(), np.abs(np.diff(f_max)).max()))
    logger.warning(
        f"Envelope not monotone on [{rule.a_min}, {rule.a_max}] at b={b}; widening Delta by {widening:.3e}"
    )
    return DeltaSet(
        lo=max(float(f_min.min()) - widening, 0.0),
        hi=min(float(f_max.max()) + widening, 1.0),
        widening=widening,
        monotone=False,
        grid=len(rates),
    )


def absorption_time_adaptive(interval, rule: RateRule, b: float, samples: int = 512,
                             n_cap: int = 100000) -> AbsorptionReport:
    """
    Steps after which every sampled adaptive orbit stays inside Delta up to n_cap.

    Each of ``samples`` equispaced initial shares carries its own rate state.

    Returns:
        AbsorptionReport: steps, interiority margin delta (all sampled iterates lie
        in [delta, 1 - delta]), sample count and the target set

    Raises:
        DomainError: interval touches 0 or 1
        NotAbsorbed: some orbit is outside Delta at n_cap
    """
    I = as_interval(interval)
    _strict_interior(I, "absorption interval")
    target = delta_set(rule, b).interval
    tol = config.SET_TOLERANCE
    ensemble = AdaptiveEnsemble(np.linspace(I.lo, I.hi, samples), rule, b)
    last_outside = -1
    for n in range(n_cap + 1):
        x = ensemble.x
        if ((x < target.lo - tol) | (x > target.hi + tol)).any():
            last_outside = n
        if n < n_cap:
            ensemble.advance(1)
        if n and n % 10000 == 0:
            logger.debug(f"Absorption scan at step {n}, last exit at {last_outside}")
    if last_outside == n_cap:
        raise NotAbsorbed(f"sampled orbits outside Delta at step {n_cap}", n_cap=n_cap)
    interiority = float(ensemble.margin.min())
    logger.info(f"Adaptive absorption after {last_outside + 1} steps, interiority {interiority:.3e}")
    return AbsorptionReport(
        steps=last_outside + 1,
        interiority=interiority,
        samples=samples,
        n_cap=n_cap,
        target=target,
    )


def volume_expansion_fixed(interval, p: MapParams, n_cap: int = 1000) -> ExpansionReport:
    """
    Steps until the exact image of an interval around b equals F(a).

    Once equal, the image must stay equal to F(a) through step min(2n, n_cap).

    Returns:
        ExpansionReport: first n with Hausdorff(f^n(I), F(a)) <= HAUSDORFF_TOLERANCE
        and the last step through which that equality was checked

    Raises:
        DomainError: b not interior to the interval
        NotExpanded: cap reached, or the image left F(a) after reaching it
    """
    I = as_interval(interval)
    b = p.equilibrium
    if not I.interior_contains(b):
        raise DomainError(f"b={b!r} must lie inside ({I.lo!r}, {I.hi!r})")
    _strict_interior(I, "expansion interval")
    F = envelope(p).perpetual
    tol = config.HAUSDORFF_TOLERANCE
    current = I
    for n in range(n_cap + 1):
        distance = hausdorff(current, F)
        if distance <= tol:
            break
        current = interval_image(current, p)
    else:
        raise NotExpanded(f"image did not reach F(a) within {n_cap} steps", n_cap=n_cap, image=current)

    horizon = min(2 * n, n_cap)
    later = current
    for k in range(n + 1, horizon + 1):
        later = interval_image(later, p)
        if hausdorff(later, F) > tol:
            raise NotExpanded(f"image reached F(a) at step {n} but left it at step {k}",
                              steps=n, step=k, image=later)
    logger.debug(f"Image equals F(a) from step {n} through step {horizon}")
    return ExpansionReport(steps=n, distance=distance, target=F, tolerance=tol, persists_to=horizon)


def expansion_target(rule: RateRule, b: float, eps: float) -> Interval:
    """F(a* - eps) for adaptive rules, F(a) for constant ones."""
    a_star = rule.limit_rate
    if rule.is_constant:
        return envelope(MapParams(a_star, b)).perpetual
    rate = a_star - eps
    if not rate > rule.a_min:
        raise DomainError(f"a* - eps = {rate!r} must exceed a_min = {rule.a_min!r}")
    return envelope(MapParams(rate, b)).perpetual


def volume_expansion_adaptive(interval, rule: RateRule, b: float, eps: float = 0.5,
                              samples: int = None, n_cap: int = 2000) -> ExpansionReport:
    """
    Steps until the sampled adaptive image of an interval around b covers F(a* - eps).

    Samples are equispaced in the interval and propagated jointly. At each step a
    grid of COVER_GRID points on the target is tested with grid_cover, the
    nominal spacing being one sample spacing of the target.

    Returns:
        ExpansionReport: steps, target, largest grid-point distance to a sampled image
        point, and whether F(a_min) is covered too

    Raises:
        DomainError: b not interior, or a* - eps <= a_min
        NotExpanded: cap reached
    """
    samples = samples if samples is not None else config.ADAPTIVE_SAMPLES
    I = as_interval(interval)
    if not I.interior_contains(b):
        raise DomainError(f"b={b!r} must lie inside ({I.lo!r}, {I.hi!r})")
    _strict_interior(I, "expansion interval")
    target = expansion_target(rule, b, eps)
    lower = envelope(MapParams(rule.a_min, b)).perpetual
    tol = target.diam / (samples - 1)

    ensemble = AdaptiveEnsemble(np.linspace(I.lo, I.hi, samples), rule, b)
    for n in range(n_cap + 1):
        x = ensemble.x
        if x.min() <= target.lo + tol and x.max() >= target.hi - tol:
            covered, nearest = grid_cover(x, target, config.COVER_GRID, tol)
            if covered:
                grid_distance = float(nearest.max())
                logger.info(
                    f"Sampled image covers F({rule.limit_rate} - {eps}) after {n} steps; "
                    f"largest grid-point distance to a sample {grid_distance:.3e}"
                )
                return ExpansionReport(
                    steps=n,
                    distance=hausdorff(Interval(float(x.min()), float(x.max())), target),
                    target=target,
                    samples=samples,
                    covers_lower=grid_cover(x, lower, config.COVER_GRID, tol)[0],
                    lower_target=lower,
                    tolerance=tol,
                    grid_distance=grid_distance,
                )
        if n < n_cap:
            ensemble.advance(1)
    raise NotExpanded(f"sampled image did not cover the target within {n_cap} steps",
                      n_cap=n_cap, samples=samples)
