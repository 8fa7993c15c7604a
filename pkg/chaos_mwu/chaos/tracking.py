#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Finite-depth symbolic tracking for the adaptive system.

Given bits c_0 ... c_{d-1} and a nested family, find an initial share x0 whose
adaptive orbit sits in A_i = V^i (c_i = 0) or U^i (c_i = 1) at times n_i, where

    n_i >= n_{i-1} + 2i  and  n_i - n_{i-1} - 2i is even.

n_0 is the first step at which the sampled image of a seed interval around b
covers both J and K. The search keeps a candidate interval of initial shares and
at each level pulls it back through the full adaptive system onto the next box;
the result is then checked by an independent forward run.
"""

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from chaos_mwu.errors import DomainError, NotTracked, PrecisionExhausted
from chaos_mwu.dynamics.rate_rule import RateRule
from chaos_mwu.dynamics.ensemble import AdaptiveEnsemble
from chaos_mwu.geometry.intervals import sample_hull_cover
from chaos_mwu.chaos.precise import PreciseSystem, working_precision
from chaos_mwu.chaos.turbulence import NestedFamily, classify, crossings, bisect_level
from chaos_mwu.scan_executor import ScanExecutor
from chaos_mwu.utils.logger import setup_logger
from chaos_mwu.utils.retry import retry

logger = setup_logger("tracking")


@dataclass(frozen=True)
class TrackingConfig:
    """Search settings for track_symbolic."""
    seed_interval: Optional[Tuple[float, float]] = None
    grid: int = 64
    burn_in_samples: int = 4096
    burn_in_cap: int = 10000
    max_shift: int = 8
    max_zoom: int = 60
    min_interior: int = 3
    n0: Optional[int] = None
    times: Optional[Tuple[int, ...]] = None


@dataclass
class SymbolicSchedule:
    bits: Tuple[int, ...]
    times: List[int]
    x0: object
    boxes: List[tuple]
    margins: List[float] = field(default_factory=list)
    precision: int = 0
    n0: int = 0

    @property
    def depth(self) -> int:
        return len(self.bits)

    @property
    def x0_text(self) -> str:
        return str(self.x0)

    def to_dict(self) -> dict:
        return {
            "bits": list(self.bits),
            "times": list(self.times),
            "x0": self.x0_text,
            "boxes": [{"lo": str(lo), "hi": str(hi)} for lo, hi in self.boxes],
            "margins": list(self.margins),
            "precision": self.precision,
            "n0": self.n0,
        }


def schedule_times(n0: int, depth: int) -> List[int]:
    """Smallest times with n_i = n_{i-1} + 2i."""
    times = [n0]
    for i in range(1, depth):
        times.append(times[-1] + 2 * i)
    return times[:depth]


def default_seed(b: float) -> Tuple[float, float]:
    return (max(b - 1e-3, 1e-6), min(b + 1e-3, 1.0 - 1e-6))


def adaptive_burn_in(rule: RateRule, b: float, family: NestedFamily, seed=None,
                     samples: int = 4096, cap: int = 10000) -> int:
    """
    First step at which the sampled adaptive image of the seed interval covers
    both J and K.

    Raises:
        NotTracked: not covered within cap steps
    """
    lo, hi = seed or default_seed(b)
    pair = family.base
    ensemble = AdaptiveEnsemble(np.linspace(lo, hi, samples), rule, b)
    for n in range(cap + 1):
        if sample_hull_cover(ensemble.x, pair.J, 0.0) and sample_hull_cover(ensemble.x, pair.K, 0.0):
            logger.info(f"Seed interval [{lo}, {hi}] covers J and K after {n} steps")
            return n
        ensemble.advance(1)
    raise NotTracked(f"seed interval never covered J and K within {cap} steps", cap=cap)


def _pull_back(system: PreciseSystem, interval, time: int, box, cfg: TrackingConfig):
    """
    Subinterval of initial shares whose adaptive image at ``time`` lies in box,
    or None when no crossing of the box is visible.
    """
    lo, hi = interval
    b_lo, b_hi = box
    grid = cfg.grid

    def share(t):
        return system.share_at(t, time)

    for _ in range(cfg.max_zoom):
        width = hi - lo
        if width <= system.resolution(hi):
            raise PrecisionExhausted(f"candidate interval below working precision at step {time}",
                                     precision=system.precision)
        ts = [lo + width * i / (grid - 1) for i in range(grid)]
        values = [share(t) for t in ts]
        classes = classify(values, b_lo, b_hi)
        if all(c == 0 for c in classes):
            return (lo, hi)
        found = crossings(classes)
        if not found:
            return None
        i, j = max(found, key=lambda ij: ij[1] - ij[0])
        inner = values[i + 1:j]
        steps = [y - x for x, y in zip(inner, inner[1:])]
        monotone = all(s > 0 for s in steps) or all(s < 0 for s in steps)
        if j - i - 1 >= cfg.min_interior and monotone:
            resolution = (ts[1] - ts[0]) * system.ctx.ldexp(1, -20)
            first_level = b_lo if classes[i] < 0 else b_hi
            second_level = b_hi if classes[i] < 0 else b_lo
            # keep the endpoints on the inside so the image stays in the box
            left = bisect_level(share, ts[i], ts[i + 1], first_level, False, resolution)
            right = bisect_level(share, ts[j - 1], ts[j], second_level, True, resolution)
            return (min(left, right), max(left, right))
        lo, hi = ts[i], ts[j]
    return None


def verify_schedule(schedule: SymbolicSchedule, rule: RateRule, b: float) -> List[float]:
    """
    Re-propagate x0 with a fresh system and measure how deep each hit lies in its box.

    Returns:
        list: per level, distance to the nearer box edge relative to the box width
              (negative when the orbit misses the box)
    """
    system = PreciseSystem(rule, b, schedule.precision)
    shares = system.shares_at(system.mpf(schedule.x0), schedule.times)
    margins = []
    for x, (lo, hi) in zip(shares, schedule.boxes):
        lo, hi = system.mpf(lo), system.mpf(hi)
        margins.append(float(min(x - lo, hi - x) / (hi - lo)))
    return margins


@retry(exceptions=(PrecisionExhausted,))
def track_symbolic(bits: Sequence[int], rule: RateRule, b: float, family: NestedFamily,
                   search_cfg: TrackingConfig = None, *, precision: int = None) -> SymbolicSchedule:
    """
    Find an initialization whose adaptive orbit follows the given bits.

    Args:
        bits: Sequence of 0/1, at most depth + 1 of the family long
        rule: Rate rule; the family should be built at its limit rate g(0)
        b: Equilibrium
        family: Nested family from refine_nested
        search_cfg: TrackingConfig
        precision: Working bits; defaults to 64 + 8 bits per scheduled step

    Returns:
        SymbolicSchedule: verified by an independent forward run

    Raises:
        NotTracked: refinement stalls or the verification run misses a box
    """
    bits = tuple(int(c) for c in bits)
    if not bits or any(c not in (0, 1) for c in bits):
        raise DomainError(f"bits must be a nonempty 0/1 sequence, got {bits!r}")
    if len(bits) > len(family.V):
        raise DomainError(f"{len(bits)} bits exceed the family's {len(family.V)} levels")
    cfg = search_cfg or TrackingConfig()
    seed = cfg.seed_interval or default_seed(b)

    if cfg.times is not None:
        planned = list(cfg.times)[:len(bits)]
        if len(planned) < len(bits):
            raise DomainError("fixed schedule shorter than the bit string")
        n0 = planned[0]
    else:
        n0 = cfg.n0 if cfg.n0 is not None else adaptive_burn_in(
            rule, b, family, seed, cfg.burn_in_samples, cfg.burn_in_cap)
        planned = schedule_times(n0, len(bits))
    shift_room = 0 if cfg.times is not None else 2 * cfg.max_shift * len(bits)
    precision = precision or working_precision(planned[-1] + shift_room)

    system = PreciseSystem(rule, b, precision)
    candidate = (system.mpf(seed[0]), system.mpf(seed[1]))
    times = []
    boxes = []
    for i, bit in enumerate(bits):
        lo, hi = family.box(i, bit)
        box = (system.mpf(lo), system.mpf(hi))
        if cfg.times is not None:
            options = [planned[i]]
        else:
            first = n0 if i == 0 else times[-1] + 2 * i
            options = [first + 2 * s for s in range(cfg.max_shift + 1)]
        found = None
        for t in options:
            found = _pull_back(system, candidate, t, box, cfg)
            if found is not None:
                times.append(t)
                break
        if found is None:
            raise NotTracked(f"no pull-back onto level {i} box within the allowed times",
                             level=i, options=options)
        candidate = found
        boxes.append(box)
        logger.debug(f"Level {i} (bit {bit}) hit at step {times[-1]}; width {float(candidate[1] - candidate[0]):.3e}")

    x0 = (candidate[0] + candidate[1]) / 2
    schedule = SymbolicSchedule(bits=bits, times=times, x0=x0, boxes=boxes, precision=precision, n0=n0)
    schedule.margins = verify_schedule(schedule, rule, b)
    if min(schedule.margins) < 0:
        raise NotTracked(f"verification run missed a box (margins {schedule.margins})", bits=bits)
    logger.info(f"Tracked bits {''.join(map(str, bits))} at times {times} with {precision} bits")
    return schedule


def track_many(bit_strings, rule: RateRule, b: float, family: NestedFamily,
               search_cfg: TrackingConfig = None, max_workers: int = None) -> List[SymbolicSchedule]:
    """
    Track several bit strings in parallel with a shared burn-in n0.

    Returns:
        list: schedules in the order of bit_strings
    """
    cfg = search_cfg or TrackingConfig()
    if cfg.n0 is None and cfg.times is None:
        cfg = replace(cfg, n0=adaptive_burn_in(rule, b, family, cfg.seed_interval,
                                               cfg.burn_in_samples, cfg.burn_in_cap))
    executor = ScanExecutor(max_workers, label="tracking")
    return executor.map(lambda bits: track_symbolic(bits, rule, b, family, cfg), bit_strings)


def track_pair(first_bits: Sequence[int], second_bits: Sequence[int], rule: RateRule, b: float,
               family: NestedFamily, search_cfg: TrackingConfig = None):
    """
    Track two bit strings on a common schedule where possible.

    The second string is first tried on the first string's times, so that both
    orbits can be compared level by level; if that fails it is tracked freely
    from the same n0.

    Returns:
        tuple: (first schedule, second schedule)
    """
    cfg = search_cfg or TrackingConfig()
    first = track_symbolic(first_bits, rule, b, family, cfg)
    try:
        second = track_symbolic(second_bits, rule, b, family, replace(cfg, times=tuple(first.times)),
                                precision=first.precision)
    except NotTracked as e:
        logger.warning(f"Second string not trackable on the shared times ({e}); tracking it freely")
        second = track_symbolic(second_bits, rule, b, family, replace(cfg, n0=first.n0, times=None))
    return first, second
