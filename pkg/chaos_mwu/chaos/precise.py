#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Extended-precision evaluation of the map and the adaptive system.

Tracking and nested refinement resolve intervals that shrink at the Lyapunov
rate, far below double precision after a few dozen steps. Every PreciseSystem
owns a private mpmath context, so systems at different precisions can run on
different threads.
"""

import mpmath

from chaos_mwu.config import config
from chaos_mwu.dynamics.rate_rule import RateRule, RuleKind


def working_precision(steps: int) -> int:
    """Bits needed to follow an orbit for the given number of steps."""
    return max(config.TRACKING_MIN_BITS, 64 + config.TRACKING_BITS_PER_STEP * int(steps))


class PreciseSystem:
    """
    Map and adaptive system at a fixed binary precision.

    Args:
        rule: Rate rule; a constant rule gives the fixed-rate map
        b: Equilibrium
        precision: Working precision in bits
    """

    def __init__(self, rule: RateRule, b: float, precision: int):
        self.ctx = mpmath.MPContext()
        self.ctx.prec = int(precision)
        self.precision = int(precision)
        self.rule = rule
        mpf = self.ctx.mpf
        self.b = mpf(b)
        self.a_min = mpf(rule.a_min)
        self.a_max = mpf(rule.a_max)
        self.kappa = mpf(rule.sharpness)
        self.table = [(mpf(r), mpf(a)) for r, a in rule.table]
        self.limit_rate = self.rate(mpf(0))

    def mpf(self, value):
        return self.ctx.mpf(value)

    def rate(self, r):
        """g(r) in working precision."""
        kind = self.rule.kind
        if kind is RuleKind.CONSTANT:
            return self.a_max
        if kind is RuleKind.GAUSSIAN_BUMP:
            return self.a_min + (self.a_max - self.a_min) * self.ctx.exp(-self.kappa * r * r)
        table = self.table
        if r <= table[0][0]:
            return table[0][1]
        if r >= table[-1][0]:
            return table[-1][1]
        for (r0, a0), (r1, a1) in zip(table, table[1:]):
            if r <= r1:
                return a0 + (a1 - a0) * (r - r0) / (r1 - r0)
        return table[-1][1]

    def step(self, x, a):
        """f(x, a, b)."""
        return self._step_from_product(x, a * (x - self.b))

    def iterate(self, x, a, k: int):
        """f^k(x) at fixed rate a."""
        for _ in range(k):
            x = self.step(x, a)
        return x

    def critical_points(self, a):
        if a <= 4:
            return ()
        r = self.ctx.sqrt(self.ctx.mpf(1) / 4 - 1 / a)
        half = self.ctx.mpf(1) / 2
        return (half - r, half + r)

    def interval_image(self, lo, hi, a):
        """Exact image of [lo, hi] at fixed rate a."""
        values = [self.step(lo, a), self.step(hi, a)]
        for c in self.critical_points(a):
            if lo < c < hi:
                values.append(self.step(c, a))
        return min(values), max(values)

    def image_n(self, lo, hi, a, n: int):
        for _ in range(n):
            lo, hi = self.interval_image(lo, hi, a)
        return lo, hi

    def shares_at(self, x0, times):
        """
        Adaptive orbit of x0 sampled at the given increasing times.

        Returns:
            list: x_t for every t in times
        """
        x = self.mpf(x0)
        total = self.ctx.zero
        a = self.limit_rate
        out = []
        wanted = list(times)
        pos = 0
        step = 0
        last = wanted[-1] if wanted else 0
        while pos < len(wanted) and wanted[pos] == 0:
            out.append(x)
            pos += 1
        while step < last:
            z = a * (x - self.b)
            x = self._step_from_product(x, z)
            total += z
            step += 1
            a = self.rate(total / step)
            while pos < len(wanted) and wanted[pos] == step:
                out.append(x)
                pos += 1
        return out

    def share_at(self, x0, time: int):
        return self.shares_at(x0, [time])[0]

    def _step_from_product(self, x, z):
        if x <= 0:
            return self.ctx.zero
        if x >= 1:
            return self.ctx.one
        if x == self.b:
            return self.b
        ctx = self.ctx
        t = ctx.log(x) - ctx.log(1 - x) - z
        return 1 / (1 + ctx.exp(-t))

    def resolution(self, scale):
        """Smallest width distinguishable from zero relative to scale."""
        return abs(scale) * self.ctx.ldexp(1, -(self.precision - 8))
