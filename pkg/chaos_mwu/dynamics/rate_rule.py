#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np

from chaos_mwu.config import config
from chaos_mwu.errors import DomainError
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("rate_rule")


class RuleKind(str, Enum):
    CONSTANT = "constant"
    GAUSSIAN_BUMP = "gaussian_bump"
    LOOKUP_TABLE = "lookup_table"


@dataclass(frozen=True)
class RateRule:
    """
    Adaptive learning-rate rule g mapping pseudo-regret to a rate in [a_min, a_max].

    Build instances with the classmethods; g(0) is the limit rate a*.
    """
    a_min: float
    a_max: float
    kind: RuleKind = RuleKind.GAUSSIAN_BUMP
    sharpness: float = config.DEFAULT_KAPPA
    table: Tuple[Tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "kind", RuleKind(self.kind))
        if not (self.a_min > 0 and math.isfinite(self.a_max)):
            raise DomainError(f"rate envelope must be positive and finite, got [{self.a_min!r}, {self.a_max!r}]")
        if self.a_min > self.a_max:
            raise DomainError(f"a_min={self.a_min!r} exceeds a_max={self.a_max!r}")
        if self.kind is RuleKind.CONSTANT and self.a_min != self.a_max:
            raise DomainError("a constant rule needs a_min == a_max")
        if self.kind is RuleKind.GAUSSIAN_BUMP and not self.sharpness > 0:
            raise DomainError(f"sharpness must be positive, got {self.sharpness!r}")
        if self.kind is RuleKind.LOOKUP_TABLE:
            if len(self.table) < 2:
                raise DomainError("a lookup table needs at least two (r, a) pairs")
            rs = [r for r, _ in self.table]
            if any(r1 >= r2 for r1, r2 in zip(rs, rs[1:])):
                raise DomainError("lookup table abscissae must be strictly increasing")
            for _, a in self.table:
                if not self.a_min <= a <= self.a_max:
                    raise DomainError(f"table rate {a!r} outside [{self.a_min!r}, {self.a_max!r}]")

    @classmethod
    def constant(cls, a: float) -> "RateRule":
        """g(r) = a for every r."""
        return cls(a_min=a, a_max=a, kind=RuleKind.CONSTANT)

    @classmethod
    def gaussian_bump(cls, a_min: float, a_max: float, kappa: float = None) -> "RateRule":
        """g(r) = a_min + (a_max - a_min) * exp(-kappa * r^2)."""
        kappa = kappa if kappa is not None else config.DEFAULT_KAPPA
        return cls(a_min=a_min, a_max=a_max, kind=RuleKind.GAUSSIAN_BUMP, sharpness=kappa)

    @classmethod
    def lookup_table(cls, pairs, a_min: float = None, a_max: float = None) -> "RateRule":
        """Piecewise-linear g through (r, a) pairs, held constant beyond the ends."""
        pairs = tuple((float(r), float(a)) for r, a in sorted(pairs))
        values = [a for _, a in pairs]
        if not values:
            raise DomainError("empty lookup table")
        return cls(
            a_min=a_min if a_min is not None else min(values),
            a_max=a_max if a_max is not None else max(values),
            kind=RuleKind.LOOKUP_TABLE,
            table=pairs,
        )

    @property
    def is_constant(self) -> bool:
        return self.kind is RuleKind.CONSTANT

    @property
    def limit_rate(self) -> float:
        """a* = g(0)."""
        return self(0.0)

    def __call__(self, r: float) -> float:
        if self.kind is RuleKind.CONSTANT:
            return self.a_max
        if self.kind is RuleKind.GAUSSIAN_BUMP:
            value = self.a_min + (self.a_max - self.a_min) * math.exp(-self.sharpness * r * r)
            return min(max(value, self.a_min), self.a_max)
        rs, values = self._columns()
        return float(np.interp(r, rs, values))

    rate = __call__

    def rates(self, r):
        """Vectorized g over an array of pseudo-regrets."""
        r = np.asarray(r, dtype=float)
        if self.kind is RuleKind.CONSTANT:
            return np.full(r.shape, self.a_max)
        if self.kind is RuleKind.GAUSSIAN_BUMP:
            value = self.a_min + (self.a_max - self.a_min) * np.exp(-self.sharpness * r * r)
            return np.clip(value, self.a_min, self.a_max)
        rs, values = self._columns()
        return np.interp(r, rs, values)

    def _columns(self):
        return [r for r, _ in self.table], [a for _, a in self.table]

    def describe(self) -> dict:
        """Plain-data view used in manifests."""
        info = {"kind": self.kind.value, "a_min": self.a_min, "a_max": self.a_max}
        if self.kind is RuleKind.GAUSSIAN_BUMP:
            info["kappa"] = self.sharpness
        if self.kind is RuleKind.LOOKUP_TABLE:
            info["table"] = [list(pair) for pair in self.table]
        return info
