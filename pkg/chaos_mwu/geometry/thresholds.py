#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Empirical brackets for the rate thresholds above which the named properties of
the fixed-rate map hold at a given equilibrium b.

Each property is checked on a uniform grid of rates. The estimate is the first
grid rate from which the property passes for every larger grid rate, so a pass
followed by a failure is recorded as a violation rather than as the estimate.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from chaos_mwu.errors import AnalysisFailure, DomainError, UNBRACKETED
from chaos_mwu.dynamics.mwu_map import MapParams
from chaos_mwu.geometry.invariant_sets import (
    envelope, check_perpetual, monotone_attraction_check, volume_expansion_fixed,
)
from chaos_mwu.scan_executor import ScanExecutor
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("thresholds")

THRESHOLD_NAMES = ("a_b", "s_b", "z_b", "v_b", "u_b", "ell_b", "k_b", "d_b")
HALF_UNDEFINED = ("u_b", "d_b")
SMALL_RADIUS = 1e-3


@dataclass
class ThresholdEstimates:
    equilibrium: float
    grid: Tuple[float, float, float]
    rates: List[float]
    estimates: Dict[str, object]
    passes: Dict[str, List[bool]]
    violations: Dict[str, List[float]] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)

    def __getitem__(self, name):
        return self.estimates[name]

    def is_bracketed(self, name) -> bool:
        return self.estimates[name] is not UNBRACKETED

    def to_dict(self) -> dict:
        return {
            "b": self.equilibrium,
            "grid": {"lo": self.grid[0], "hi": self.grid[1], "step": self.grid[2], "points": len(self.rates)},
            "estimates": {
                name: (None if value is UNBRACKETED else value) for name, value in self.estimates.items()
            },
            "unbracketed": sorted(name for name, value in self.estimates.items() if value is UNBRACKETED),
            "violations": {name: rates for name, rates in self.violations.items() if rates},
            "flags": list(self.flags),
        }


def rate_grid(lo: float, hi: float, step: float) -> List[float]:
    """lo, lo + step, ... up to hi inclusive (to a tolerance of 1e-9 steps)."""
    if not lo > 4.0:
        raise DomainError(f"grid must start above 4, got lo={lo!r}")
    if not (step > 0.0 and hi >= lo):
        raise DomainError(f"invalid grid ({lo!r}, {hi!r}, {step!r})")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def _holds(check) -> bool:
    try:
        return bool(check())
    except (AnalysisFailure, DomainError):
        return False


def grid_properties(p: MapParams, skip=()) -> Dict[str, bool]:
    """
    Evaluate every threshold property at one rate.

    Returns:
        dict: property name -> bool (names in ``skip`` are left out)
    """
    # chaos builds on geometry
    from chaos_mwu.chaos.periodic import period2_points, period3_find
    from chaos_mwu.chaos.turbulence import build_turbulent_pair
    from chaos_mwu.chaos.metrics import equilibrium_unstable

    a, b = p.rate, p.equilibrium
    env = envelope(p)
    results = {"a_b": env.ordered}

    def perpetual():
        report = check_perpetual(p)
        return report.forward_invariant and report.surjective and monotone_attraction_check(p)

    results["s_b"] = _holds(perpetual)
    results["z_b"] = _holds(lambda: volume_expansion_fixed((b - SMALL_RADIUS, b + SMALL_RADIUS), p))
    if env.x_max < b < env.x_min:
        results["v_b"] = _holds(lambda: volume_expansion_fixed((env.x_max, env.x_min), p))
    else:
        results["v_b"] = False
    results["ell_b"] = _holds(
        lambda: not any(env.x_max <= q <= env.x_min
                        for pair in period2_points(p) for q in (pair.left, pair.right))
    )
    results["k_b"] = equilibrium_unstable(p)[1]

    if "u_b" not in skip or "d_b" not in skip:
        try:
            orbit = period3_find(p)
        except (AnalysisFailure, DomainError):
            orbit = None
        results["u_b"] = orbit is not None
        results["d_b"] = orbit is not None and _holds(lambda: build_turbulent_pair(p, orbit))
    for name in skip:
        results.pop(name, None)
    logger.debug(f"Properties at a={a}, b={b}: {results}")
    return results


def _suffix_estimate(rates, passed):
    failures = [i for i, ok in enumerate(passed) if not ok]
    if not failures:
        return rates[0]
    last = failures[-1]
    if last == len(rates) - 1:
        return UNBRACKETED
    return rates[last + 1]


def _violations(rates, passed):
    seen_pass = False
    out = []
    for a, ok in zip(rates, passed):
        if ok:
            seen_pass = True
        elif seen_pass:
            out.append(a)
    return out


def estimate_thresholds(b: float, a_grid: Tuple[float, float, float] = (4.1, 100.0, 0.1),
                        max_workers: int = None) -> ThresholdEstimates:
    """
    Bracket every threshold at equilibrium b on a grid of rates.

    Args:
        b: Equilibrium in (0, 1)
        a_grid: (lo, hi, step) with lo > 4
        max_workers: Thread cap for the grid scan

    Returns:
        ThresholdEstimates: per name the first rate of the passing suffix, or
        UNBRACKETED when the property fails at the top of the grid
    """
    if not 0.0 < b < 1.0:
        raise DomainError(f"equilibrium must lie in (0, 1), got {b!r}")
    lo, hi, step = a_grid
    rates = rate_grid(lo, hi, step)
    flags = []
    skip = ()
    if b == 0.5:
        skip = HALF_UNDEFINED
        flags.append("b = 1/2: period-3 and turbulence thresholds are not defined")

    executor = ScanExecutor(max_workers, label=f"thresholds b={b}")
    rows = executor.map(lambda a: grid_properties(MapParams(a, b), skip), rates)

    estimates = {}
    passes = {}
    violations = {}
    for name in THRESHOLD_NAMES:
        if name in skip:
            estimates[name] = UNBRACKETED
            continue
        passed = [row[name] for row in rows]
        passes[name] = passed
        estimates[name] = _suffix_estimate(rates, passed)
        violations[name] = _violations(rates, passed)
        if violations[name]:
            logger.warning(f"{name} at b={b}: passes then fails at {len(violations[name])} grid rates")
    logger.info(f"Threshold estimates at b={b}: {estimates}")
    return ThresholdEstimates(
        equilibrium=b,
        grid=(lo, hi, step),
        rates=rates,
        estimates=estimates,
        passes=passes,
        violations=violations,
        flags=flags,
    )
