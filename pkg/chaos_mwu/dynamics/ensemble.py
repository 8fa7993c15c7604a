#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np

from chaos_mwu.errors import DomainError
from chaos_mwu.dynamics.mwu_map import step_array_from_product, mwu_step_array
from chaos_mwu.dynamics.rate_rule import RateRule
from chaos_mwu.config import config
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("ensemble")


class AdaptiveEnsemble:
    """
    Many initializations of the adaptive system advanced in lockstep.

    Each sample carries its own share, compensated regret sum and rate. The
    ensemble also keeps, per sample, a compensated running sum of x_i - b (for
    Cesàro means)
    and the running minimum of min(x, 1 - x) over all visited states.
    """

    def __init__(self, x0, rule: RateRule, b: float):
        x0 = np.array(x0, dtype=float, ndmin=1)
        if np.isnan(x0).any() or (x0 < 0.0).any() or (x0 > 1.0).any():
            raise DomainError("initial shares must lie in [0, 1]")
        if not 0.0 < b < 1.0:
            raise DomainError(f"equilibrium must lie in (0, 1), got {b!r}")
        self.rule = rule
        self.b = b
        self.initial = x0.copy()
        self.x = x0.copy()
        self.total = np.zeros_like(x0)
        self._carry = np.zeros_like(x0)
        self.a = np.full_like(x0, rule.limit_rate)
        self.step = 0
        self.deviation_sum = np.zeros_like(x0)
        self._deviation_carry = np.zeros_like(x0)
        self.margin = np.minimum(x0, 1.0 - x0)

    def __len__(self):
        return len(self.x)

    @property
    def pseudo_regret(self):
        """r_n = S_n / n (zero at n = 0)."""
        if self.step == 0:
            return np.zeros_like(self.x)
        return self.total / self.step

    def advance(self, steps: int = 1):
        """Advance every sample by the given number of steps."""
        b = self.b
        rule = self.rule
        limit = config.EXP_CLAMP
        for _ in range(steps):
            y = (self.x - b) - self._deviation_carry
            t = self.deviation_sum + y
            self._deviation_carry = (t - self.deviation_sum) - y
            self.deviation_sum = t
            z = self.a * (self.x - b)
            self.x = step_array_from_product(self.x, np.clip(z, -limit, limit), b)
            y = z - self._carry
            t = self.total + y
            self._carry = (t - self.total) - y
            self.total = t
            self.step += 1
            self.a = rule.rates(self.total / self.step)
            np.minimum(self.margin, np.minimum(self.x, 1.0 - self.x), out=self.margin)
        return self

    def advance_to(self, step: int):
        if step < self.step:
            raise DomainError(f"ensemble already at step {self.step}, cannot go back to {step}")
        return self.advance(step - self.step)

    def next_pseudo_regret(self):
        """|(S_n + a_n (x_n - b)) / (n + 1)|, the average including the current step."""
        return np.abs((self.total + self.a * (self.x - self.b)) / (self.step + 1))

    def cesaro_deviation(self):
        """|(x_0 + ... + x_n) / (n + 1) - b|."""
        return np.abs((self.deviation_sum + (self.x - self.b)) / (self.step + 1))

    def next_shares(self):
        """x_{n+1} for every sample, without advancing."""
        z = np.clip(self.a * (self.x - self.b), -config.EXP_CLAMP, config.EXP_CLAMP)
        return step_array_from_product(self.x, z, self.b)

    def rate_gap(self):
        """|a_n - g(0)|."""
        return np.abs(self.a - self.rule.limit_rate)

    def strong_gap(self, k: int):
        """
        |x_{n+k} - f^k(x_n, a*, b)| for every sample, computed on a copy.

        The ensemble itself is not advanced.
        """
        if k < 1:
            raise DomainError(f"k must be at least 1, got {k!r}")
        trial = self.copy()
        frozen = self.x.copy()
        a_star = self.rule.limit_rate
        for _ in range(k):
            frozen = mwu_step_array(frozen, a_star, self.b)
        trial.advance(k)
        return np.abs(trial.x - frozen)

    def copy(self) -> "AdaptiveEnsemble":
        other = AdaptiveEnsemble.__new__(AdaptiveEnsemble)
        other.rule = self.rule
        other.b = self.b
        other.initial = self.initial
        other.x = self.x.copy()
        other.total = self.total.copy()
        other._carry = self._carry.copy()
        other.a = self.a.copy()
        other.step = self.step
        other.deviation_sum = self.deviation_sum.copy()
        other._deviation_carry = self._deviation_carry.copy()
        other.margin = self.margin.copy()
        return other
