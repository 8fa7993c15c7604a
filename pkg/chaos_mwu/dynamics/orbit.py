#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Orbit iteration for the fixed-rate map and the adaptive-rate system.

The adaptive system runs

    x_{n+1} = f(x_n, a_n, b)
    S_{n+1} = S_n + a_n (x_n - b)
    r_{n+1} = S_{n+1} / (n + 1),   a_{n+1} = g(r_{n+1})

from S_0 = 0, r_0 = 0 and a_0 = g(0). S is accumulated with Kahan compensation;
the step and the sum share the same rounded product a_n (x_n - b).
"""

from dataclasses import dataclass
from typing import Callable, Union, Tuple

import numpy as np
from scipy.special import expit, logit

from chaos_mwu.errors import DomainError
from chaos_mwu.dynamics.mwu_map import MapParams, step_from_product
from chaos_mwu.dynamics.rate_rule import RateRule
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("orbit")


@dataclass(frozen=True)
class AdaptiveState:
    """State of the adaptive system at one step."""
    step: int
    share: float
    cum_weighted_regret: float
    pseudo_regret: float
    rate: float


@dataclass
class OrbitTrace:
    """
    Recorded orbit. Row i holds the state before the update at step steps[i].

    Attributes:
        params: MapParams for fixed runs, (RateRule, b) for adaptive runs
        initial_share: x_0
        steps, shares, rates, regrets, cum_regrets: one entry per retained step
        burn_in: number of leading steps not retained
    """
    params: Union[MapParams, Tuple[RateRule, float]]
    initial_share: float
    steps: np.ndarray
    shares: np.ndarray
    rates: np.ndarray
    regrets: np.ndarray
    cum_regrets: np.ndarray
    burn_in: int = 0
    final_state: AdaptiveState = None

    def __len__(self):
        return len(self.steps)

    @property
    def equilibrium(self) -> float:
        if isinstance(self.params, MapParams):
            return self.params.equilibrium
        return self.params[1]

    @property
    def is_adaptive(self) -> bool:
        return not isinstance(self.params, MapParams)

    def records(self):
        """Iterate (step, share, rate, pseudo_regret) rows."""
        for row in zip(self.steps.tolist(), self.shares.tolist(), self.rates.tolist(), self.regrets.tolist()):
            yield row

    def state_at(self, index: int) -> AdaptiveState:
        return AdaptiveState(
            step=int(self.steps[index]),
            share=float(self.shares[index]),
            cum_weighted_regret=float(self.cum_regrets[index]),
            pseudo_regret=float(self.regrets[index]),
            rate=float(self.rates[index]),
        )


def _check_start(x0: float, n: int, burn_in: int):
    if x0 != x0 or not 0.0 <= x0 <= 1.0:
        raise DomainError(f"initial share must lie in [0, 1], got {x0!r}")
    if n < 0 or burn_in < 0:
        raise DomainError(f"n and burn_in must be nonnegative, got n={n!r}, burn_in={burn_in!r}")


def _run(x0: float, rate_of: Callable[[float], float], b: float, n: int, burn_in: int, params) -> OrbitTrace:
    kept = max(n - burn_in, 0)
    steps = np.arange(burn_in, burn_in + kept, dtype=np.int64)
    shares = np.empty(kept)
    rates = np.empty(kept)
    regrets = np.empty(kept)
    cum_regrets = np.empty(kept)

    x = x0
    total = 0.0
    carry = 0.0
    r = 0.0
    a = rate_of(0.0)
    for step in range(n):
        if step >= burn_in:
            i = step - burn_in
            shares[i] = x
            rates[i] = a
            regrets[i] = r
            cum_regrets[i] = total
        z = a * (x - b)
        x = step_from_product(x, z, b)
        # compensated S += z
        y = z - carry
        t = total + y
        carry = (t - total) - y
        total = t
        r = total / (step + 1)
        a = rate_of(r)

    final = AdaptiveState(step=n, share=x, cum_weighted_regret=total, pseudo_regret=r, rate=a)
    return OrbitTrace(
        params=params,
        initial_share=x0,
        steps=steps,
        shares=shares,
        rates=rates,
        regrets=regrets,
        cum_regrets=cum_regrets,
        burn_in=burn_in,
        final_state=final,
    )


def iterate_fixed(x0: float, p: MapParams, n: int, burn_in: int = 0) -> OrbitTrace:
    """
    Iterate the map at a fixed rate.

    Args:
        x0: Initial share in [0, 1]
        p: Map parameters
        n: Number of steps
        burn_in: Leading steps to drop from the record

    Returns:
        OrbitTrace: rows for steps burn_in..n-1; final_state holds x_n
    """
    _check_start(x0, n, burn_in)
    a = p.rate
    return _run(x0, lambda r: a, p.equilibrium, n, burn_in, p)


def iterate_adaptive(x0: float, rule: RateRule, b: float, n: int, burn_in: int = 0) -> OrbitTrace:
    """
    Iterate the adaptive-rate system with a_0 = g(0).

    Args:
        x0: Initial share in [0, 1]
        rule: Rate rule g
        b: Equilibrium in (0, 1)
        n: Number of steps
        burn_in: Leading steps to drop from the record

    Returns:
        OrbitTrace: rows for steps burn_in..n-1; final_state holds the state at step n
    """
    _check_start(x0, n, burn_in)
    if not 0.0 < b < 1.0:
        raise DomainError(f"equilibrium must lie in (0, 1), got {b!r}")
    logger.debug(f"Adaptive run x0={x0!r} b={b!r} n={n} rule={rule.describe()}")
    return _run(x0, rule, b, n, burn_in, (rule, b))


def closed_form_check(trace: OrbitTrace) -> float:
    """
    Compare recorded shares with x_n = sigmoid(logit(x0) - S_n).

    Returns:
        float: max absolute deviation over the recorded steps

    Raises:
        DomainError: if x0 is 0 or 1
    """
    x0 = trace.initial_share
    if not 0.0 < x0 < 1.0:
        raise DomainError(f"closed form needs an interior start, got x0={x0!r}")
    if len(trace) == 0:
        return 0.0
    s = trace.cum_regrets
    predicted = np.where(s == 0.0, x0, expit(logit(x0) - s))
    return float(np.max(np.abs(trace.shares - predicted)))
