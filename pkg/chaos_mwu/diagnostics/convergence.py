#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Convergence diagnostics for the adaptive system.

All quantities come from one joint propagation of a sample set of initial
shares, advanced along an increasing ladder of horizons. At horizon n:

    pseudo_regret   |(1/(n+1)) sum_{i<=n} a_i (x_i - b)|        reference 0
    cesaro_mean     (1/(n+1)) sum_{i<=n} x_i                     reference b
    rate_gap        a_n                                          reference g(0)
    strong_gap      |x_{n+k} - f^k(x_n, g(0), b)|                reference 0

The pseudo-regret average is also checked against -ln(delta^2)/n, with delta the
smallest distance to {0, 1} seen by the sample up to step n + 1.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from chaos_mwu.config import config
from chaos_mwu.errors import DomainError
from chaos_mwu.dynamics.rate_rule import RateRule
from chaos_mwu.dynamics.ensemble import AdaptiveEnsemble
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("convergence")

QUANTITIES = ("pseudo_regret", "cesaro_mean", "rate_gap", "strong_gap")
DEFAULT_HORIZONS = (1000, 10000, 100000, 1000000)


@dataclass
class ConvergenceReport:
    """
    One quantity at one horizon over the sample set.

    sup_value = max |values - reference|, attained at sample index argmax.
    """
    quantity: str
    horizon: int
    values: np.ndarray
    sup_value: float
    reference: float
    argmax: int
    samples: np.ndarray = None

    @property
    def attained_at(self) -> float:
        """Initial share of the sample attaining the sup."""
        return float(self.samples[self.argmax]) if self.samples is not None else float("nan")

    def to_dict(self, per_sample: bool = False) -> dict:
        info = {
            "quantity": self.quantity,
            "horizon": self.horizon,
            "sup": self.sup_value,
            "reference": self.reference,
            "argmax": self.argmax,
            "attained_at": self.attained_at,
        }
        if per_sample:
            info["values"] = self.values.tolist()
        return info


@dataclass
class ConvergenceSuite:
    """All four report families plus the per-sample regret bound check."""
    reports: Dict[str, List[ConvergenceReport]]
    bound_holds: List[bool]
    bound_slack: List[float]
    gap_ratio: List[float]
    interiority: float
    k: int
    horizons: List[int] = field(default_factory=list)

    def sups(self, quantity: str) -> List[float]:
        return [r.sup_value for r in self.reports[quantity]]

    def rows(self):
        """(quantity, horizon, sup, reference) in horizon order per quantity."""
        for quantity in QUANTITIES:
            for r in self.reports[quantity]:
                yield quantity, r.horizon, r.sup_value, r.reference

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "horizons": list(self.horizons),
            "interiority": self.interiority,
            "bound_holds": list(self.bound_holds),
            "bound_slack": list(self.bound_slack),
            "gap_ratio": list(self.gap_ratio),
            "reports": {q: [r.to_dict() for r in self.reports[q]] for q in QUANTITIES},
            "trend": {q: decay_trend(self.reports[q]) for q in QUANTITIES},
        }


def sample_set(lo: float = 0.1, hi: float = 0.9, grid: int = None, random: int = None,
               seed: int = None) -> np.ndarray:
    """
    Equispaced points on [lo, hi] followed by seeded uniform points on it.

    Args:
        lo, hi: Sample range strictly inside (0, 1)
        grid: Equispaced count, defaults to config.DIAGNOSTIC_GRID_SAMPLES
        random: Random count, defaults to config.DIAGNOSTIC_RANDOM_SAMPLES
        seed: Generator seed, defaults to config.DEFAULT_SEED

    Returns:
        numpy.ndarray: grid + random samples, in that order
    """
    grid = config.DIAGNOSTIC_GRID_SAMPLES if grid is None else grid
    random = config.DIAGNOSTIC_RANDOM_SAMPLES if random is None else random
    seed = config.DEFAULT_SEED if seed is None else seed
    if not 0.0 < lo <= hi < 1.0:
        raise DomainError(f"sample range [{lo!r}, {hi!r}] must lie inside (0, 1)")
    rng = np.random.default_rng(seed)
    return np.concatenate([np.linspace(lo, hi, grid), rng.uniform(lo, hi, random)])


def _check_inputs(x0_set, horizons, k=1):
    x0 = np.array(x0_set, dtype=float, ndmin=1)
    if x0.size == 0:
        raise DomainError("empty sample set")
    if np.isnan(x0).any() or (x0 <= 0.0).any() or (x0 >= 1.0).any():
        raise DomainError("diagnostic samples must lie strictly inside (0, 1)")
    horizons = sorted(int(n) for n in horizons)
    if not horizons or horizons[0] < 1:
        raise DomainError(f"horizons must be positive, got {horizons!r}")
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k!r}")
    return x0, horizons


def _report(quantity, horizon, values, reference, deviations, samples):
    i = int(np.argmax(deviations))
    return ConvergenceReport(
        quantity=quantity,
        horizon=horizon,
        values=values,
        sup_value=float(deviations[i]),
        reference=reference,
        argmax=i,
        samples=samples,
    )


def convergence_suite(x0_set, rule: RateRule, b: float, horizons: Sequence[int] = DEFAULT_HORIZONS,
                      k: int = 2) -> ConvergenceSuite:
    """
    Propagate the sample set once along the horizon ladder and collect every report.

    Args:
        x0_set: Initial shares strictly inside (0, 1)
        rule: Rate rule
        b: Equilibrium
        horizons: Horizons n >= 1, processed in increasing order
        k: Lookahead of the strong convergence gap

    Returns:
        ConvergenceSuite

    Raises:
        DomainError: boundary samples or invalid horizons
    """
    x0, horizons = _check_inputs(x0_set, horizons, k)
    ensemble = AdaptiveEnsemble(x0, rule, b)
    a_star = rule.limit_rate
    reports = {q: [] for q in QUANTITIES}
    bound_holds, bound_slack, gap_ratio = [], [], []

    for n in horizons:
        ensemble.advance_to(n)
        signed = (ensemble.total + ensemble.a * (ensemble.x - b)) / (n + 1)
        pseudo = np.abs(signed)
        reports["pseudo_regret"].append(_report("pseudo_regret", n, signed, 0.0, pseudo, x0))

        cesaro_dev = ensemble.cesaro_deviation()
        mean = b + (ensemble.deviation_sum + (ensemble.x - b)) / (n + 1)
        reports["cesaro_mean"].append(_report("cesaro_mean", n, mean, b, cesaro_dev, x0))

        rate_dev = ensemble.rate_gap()
        reports["rate_gap"].append(_report("rate_gap", n, ensemble.a.copy(), a_star, rate_dev, x0))

        strong = ensemble.strong_gap(k)
        reports["strong_gap"].append(_report("strong_gap", n, strong, 0.0, strong, x0))

        following = ensemble.next_shares()
        delta = np.minimum(ensemble.margin, np.minimum(following, 1.0 - following))
        with np.errstate(divide="ignore"):
            bound = -np.log(delta * delta) / n
        slack = bound * (1.0 + 1e-9) + 1e-12 - pseudo
        bound_holds.append(bool((slack >= 0.0).all()))
        bound_slack.append(float(slack.min()))

        rate_sup = float(rate_dev.max())
        gap_ratio.append(float(strong.max()) / rate_sup if rate_sup > 0.0 else 0.0)
        logger.info(
            f"n={n}: pseudo {pseudo.max():.3e}, cesaro {cesaro_dev.max():.3e}, "
            f"rate {rate_sup:.3e}, strong(k={k}) {strong.max():.3e}"
        )

    return ConvergenceSuite(
        reports=reports,
        bound_holds=bound_holds,
        bound_slack=bound_slack,
        gap_ratio=gap_ratio,
        interiority=float(ensemble.margin.min()),
        k=k,
        horizons=horizons,
    )


def pseudo_regret_decay(x0_set, rule: RateRule, b: float,
                        horizons: Sequence[int] = DEFAULT_HORIZONS) -> List[ConvergenceReport]:
    """sup over samples of |(1/(n+1)) sum a_i (x_i - b)| per horizon."""
    return convergence_suite(x0_set, rule, b, horizons, k=1).reports["pseudo_regret"]


def rate_uniform_convergence(x0_set, rule: RateRule, b: float,
                             horizons: Sequence[int] = DEFAULT_HORIZONS) -> List[ConvergenceReport]:
    """sup over samples of |a_n - g(0)| per horizon."""
    return convergence_suite(x0_set, rule, b, horizons, k=1).reports["rate_gap"]


def cesaro_mean(x0_set, rule: RateRule, b: float,
                horizons: Sequence[int] = DEFAULT_HORIZONS) -> List[ConvergenceReport]:
    """sup over samples of |(1/(n+1)) sum x_i - b| per horizon."""
    return convergence_suite(x0_set, rule, b, horizons, k=1).reports["cesaro_mean"]


def strong_convergence_gap(x0_set, rule: RateRule, b: float, k: int,
                           horizons: Sequence[int] = DEFAULT_HORIZONS) -> List[ConvergenceReport]:
    """max over samples of |x_{n+k} - f^k(x_n, g(0), b)| per horizon."""
    return convergence_suite(x0_set, rule, b, horizons, k=k).reports["strong_gap"]


def decay_trend(reports: Sequence[ConvergenceReport]) -> dict:
    """
    Whether the sup decreases along the horizon ladder, and the log-log slope.

    Returns:
        dict: nonincreasing flag, slope (None with fewer than two positive sups)
              and the sup ratio between consecutive horizons
    """
    horizons = np.array([r.horizon for r in reports], dtype=float)
    sups = np.array([r.sup_value for r in reports], dtype=float)
    nonincreasing = bool((np.diff(sups) <= 0.0).all())
    positive = sups > 0.0
    slope = None
    if positive.sum() >= 2:
        slope = float(np.polyfit(np.log(horizons[positive]), np.log(sups[positive]), 1)[0])
    ratios = [float(s1 / s0) if s0 > 0.0 else None for s0, s1 in zip(sups, sups[1:])]
    return {"nonincreasing": nonincreasing, "slope": slope, "ratios": ratios}
