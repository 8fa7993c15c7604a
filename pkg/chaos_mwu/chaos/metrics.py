#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Chaos metrics: Lyapunov exponents, finite-horizon scrambled-pair gaps and the
instability of the interior equilibrium.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Union

import numpy as np

from chaos_mwu.config import config
from chaos_mwu.errors import DomainError
from chaos_mwu.dynamics.mwu_map import MapParams, derivative_array, derivative_value
from chaos_mwu.dynamics.rate_rule import RateRule
from chaos_mwu.dynamics.orbit import iterate_fixed, iterate_adaptive
from chaos_mwu.chaos.precise import PreciseSystem
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("metrics")


def _as_rule(rule_or_params, b):
    if isinstance(rule_or_params, MapParams):
        return RateRule.constant(rule_or_params.rate), rule_or_params.equilibrium
    if b is None:
        raise DomainError("equilibrium b is required with a rate rule")
    return rule_or_params, b


def lyapunov(x0: float, rule_or_params: Union[MapParams, RateRule], b: float = None,
             n: int = 10000, burn_in: int = 1000) -> float:
    """
    Finite-time Lyapunov exponent along one orbit.

    Averages ln|f'(x_i, a_i, b)| over the steps burn_in..n-1; ln 0 is replaced
    by LYAPUNOV_LOG_FLOOR.

    Args:
        x0: Initial share in (0, 1)
        rule_or_params: MapParams for the fixed map, RateRule for the adaptive system
        b: Equilibrium (taken from MapParams when given)
        n: Total steps
        burn_in: Discarded leading steps

    Returns:
        float: Mean log-derivative
    """
    if not 0.0 < x0 < 1.0:
        raise DomainError(f"x0 must lie in (0, 1), got {x0!r}")
    if n <= burn_in:
        raise DomainError(f"n={n} must exceed burn_in={burn_in}")
    if isinstance(rule_or_params, MapParams):
        trace = iterate_fixed(x0, rule_or_params, n, burn_in)
    else:
        rule, b = _as_rule(rule_or_params, b)
        trace = iterate_adaptive(x0, rule, b, n, burn_in)
    slopes = np.abs(derivative_array(trace.shares, trace.rates, trace.equilibrium))
    with np.errstate(divide="ignore"):
        logs = np.log(slopes)
    logs = np.maximum(logs, config.LYAPUNOV_LOG_FLOOR)
    value = float(np.mean(logs))
    logger.debug(f"Lyapunov exponent from x0={x0!r} over {n - burn_in} steps: {value:.6f}")
    return value


@dataclass
class ScrambledMetrics:
    """
    Orbit gap statistics of two initializations over the tail of a run.

    Unpacks as (min_gap, max_gap).
    """
    min_gap: float
    max_gap: float
    tail_start: int
    horizon: int
    gaps: Dict[int, float] = field(default_factory=dict)

    def __iter__(self):
        yield self.min_gap
        yield self.max_gap

    def to_dict(self) -> dict:
        return {
            "min_gap": self.min_gap,
            "max_gap": self.max_gap,
            "tail_start": self.tail_start,
            "horizon": self.horizon,
            "gaps": {str(t): g for t, g in sorted(self.gaps.items())},
        }


def _tail_start(n: int, tail: float) -> int:
    if not 0.0 < tail <= 1.0:
        raise DomainError(f"tail must lie in (0, 1], got {tail!r}")
    return n - int(math.ceil(tail * n))


def scrambled_metrics(x0: float, y0: float, rule: Union[RateRule, MapParams], b: float = None,
                      n: int = 10000, tail: float = None, times: Sequence[int] = (),
                      precision: int = None) -> ScrambledMetrics:
    """
    min and max of |x_n(x0) - x_n(y0)| over the final ``tail`` fraction of steps.

    These are finite-horizon stand-ins for liminf and limsup. With ``precision``
    both orbits are propagated in extended precision, which is needed when x0 and
    y0 come from symbolic tracking.

    Args:
        x0, y0: Initial shares in (0, 1); mpmath numbers are accepted with precision
        rule: Rate rule, or MapParams for the fixed map
        b: Equilibrium
        n: Horizon
        tail: Fraction of steps considered, defaults to config.TAIL_FRACTION
        times: Extra steps (<= n) whose gaps are reported in ``gaps``
        precision: Bits for an extended-precision run; None runs in float

    Returns:
        ScrambledMetrics
    """
    rule, b = _as_rule(rule, b)
    tail = tail if tail is not None else config.TAIL_FRACTION
    start = _tail_start(n, tail)
    wanted = sorted(set(range(start, n + 1)) | {int(t) for t in times if 0 <= int(t) <= n})

    if precision is None:
        for v in (x0, y0):
            if not 0.0 < float(v) < 1.0:
                raise DomainError(f"initial shares must lie in (0, 1), got {v!r}")
        xs = _float_orbit(float(x0), rule, b, n)
        ys = _float_orbit(float(y0), rule, b, n)
        all_gaps = {t: float(abs(xs[t] - ys[t])) for t in wanted}
    else:
        system = PreciseSystem(rule, b, precision)
        xs = system.shares_at(x0, wanted)
        ys = system.shares_at(y0, wanted)
        all_gaps = {t: float(abs(x - y)) for t, x, y in zip(wanted, xs, ys)}

    tail_gaps = [all_gaps[t] for t in range(start, n + 1)]
    extra = {int(t): all_gaps[int(t)] for t in times if int(t) in all_gaps}
    return ScrambledMetrics(
        min_gap=min(tail_gaps),
        max_gap=max(tail_gaps),
        tail_start=start,
        horizon=n,
        gaps=extra,
    )


def _float_orbit(x0: float, rule: RateRule, b: float, n: int) -> np.ndarray:
    trace = iterate_adaptive(x0, rule, b, n)
    return np.append(trace.shares, trace.final_state.share)


@dataclass
class TrackingEvidence:
    """Per-level comparison of two tracked orbits at their shared times."""
    rows: List[dict]
    separation: float
    holds: bool

    def to_dict(self) -> dict:
        return {"rows": self.rows, "separation": self.separation, "holds": self.holds}


def tracking_evidence(first, second, rule: RateRule, b: float, family) -> TrackingEvidence:
    """
    Check two tracked schedules against the scrambling picture.

    At levels where the bits differ the two orbits sit in J and K, so their gap is
    at least gap(J, K). Where the bits agree both sit in the same box and the gap
    is at most its diameter. Only levels reached at the same time in both
    schedules are compared.

    Args:
        first, second: SymbolicSchedule objects
        rule: Rate rule used for tracking
        b: Equilibrium
        family: NestedFamily the schedules were tracked against

    Returns:
        TrackingEvidence
    """
    precision = max(first.precision, second.precision)
    system = PreciseSystem(rule, b, precision)
    common = [i for i in range(min(first.depth, second.depth)) if first.times[i] == second.times[i]]
    if not common:
        raise DomainError("schedules share no level times")
    times = [first.times[i] for i in common]
    xs = system.shares_at(system.mpf(first.x0), times)
    ys = system.shares_at(system.mpf(second.x0), times)
    separation = family.base.gap
    rows = []
    holds = True
    for i, t, x, y in zip(common, times, xs, ys):
        gap = float(abs(x - y))
        if first.bits[i] != second.bits[i]:
            bound = separation
            ok = gap >= bound
            kind = "differ"
        else:
            lo, hi = first.boxes[i]
            bound = float(hi - lo)
            ok = gap <= bound
            kind = "agree"
        holds = holds and ok
        rows.append({"level": i, "time": t, "kind": kind, "gap": gap, "bound": bound, "ok": ok})
    logger.info(f"Tracking evidence over {len(rows)} levels: {'holds' if holds else 'fails'}")
    return TrackingEvidence(rows=rows, separation=separation, holds=holds)


def equilibrium_unstable(p: MapParams):
    """
    |f'(b)| = |a b^2 - a b + 1| and whether it exceeds 1.

    Returns:
        tuple: (slope, unstable)
    """
    slope = abs(derivative_value(p.equilibrium, p.rate, p.equilibrium))
    return slope, slope > 1.0
