#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
The MWU map of a two-route nonatomic linear congestion game.

With x the share of the flow on route 1, one round of multiplicative weights is

    f(x, a, b) = x / (x + (1 - x) * exp(a * (x - b)))

where a = N*eta/(gamma+delta) is the normalized learning rate and
b = delta/(gamma+delta) the equilibrium split. Evaluation happens in logit space,
logit(f) = logit(x) - a*(x - b), which never overflows and keeps the boundary
fixed points 0 and 1 and the interior fixed point b exact.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit, logit

from chaos_mwu.config import config
from chaos_mwu.errors import DomainError, NoCriticalPoints
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("mwu_map")


@dataclass(frozen=True)
class GameSpec:
    """Raw congestion-game parameters."""
    total_flow: float
    cost_coeff_1: float
    cost_coeff_2: float
    raw_rate: float = 1.0

    def __post_init__(self):
        for name in ("total_flow", "cost_coeff_1", "cost_coeff_2", "raw_rate"):
            value = getattr(self, name)
            if not value > 0 or not math.isfinite(value):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class MapParams:
    """Normalized map parameters: rate a and equilibrium b."""
    rate: float
    equilibrium: float

    def __post_init__(self):
        if not self.rate > 0 or not math.isfinite(self.rate):
            raise DomainError(f"rate must be positive and finite, got {self.rate!r}")
        if not 0.0 < self.equilibrium < 1.0:
            raise DomainError(f"equilibrium must lie in (0, 1), got {self.equilibrium!r}")

    @property
    def a(self) -> float:
        return self.rate

    @property
    def b(self) -> float:
        return self.equilibrium

    def mirrored(self) -> "MapParams":
        """Parameters of the conjugate map x -> 1 - x, b -> 1 - b."""
        return MapParams(self.rate, 1.0 - self.equilibrium)


def normalize(spec: GameSpec) -> MapParams:
    """
    Change of variables from game parameters to the normalized map.

    Args:
        spec: Game parameters

    Returns:
        MapParams: a = N*eta/(gamma+delta), b = delta/(gamma+delta)
    """
    scale = spec.cost_coeff_1 + spec.cost_coeff_2
    return MapParams(
        rate=spec.total_flow * spec.raw_rate / scale,
        equilibrium=spec.cost_coeff_2 / scale,
    )


def denormalize(p: MapParams, total_flow: float, cost_scale: float) -> GameSpec:
    """
    Inverse of normalize, given N and the cost scale gamma+delta.

    Args:
        p: Normalized parameters
        total_flow: Total flow N
        cost_scale: gamma + delta

    Returns:
        GameSpec: Game parameters mapping back to p
    """
    if not total_flow > 0 or not cost_scale > 0:
        raise DomainError(f"total_flow and cost_scale must be positive, got {total_flow!r}, {cost_scale!r}")
    return GameSpec(
        total_flow=total_flow,
        cost_coeff_1=(1.0 - p.equilibrium) * cost_scale,
        cost_coeff_2=p.equilibrium * cost_scale,
        raw_rate=p.rate * cost_scale / total_flow,
    )


def _clamp(z: float) -> float:
    limit = config.EXP_CLAMP
    if z > limit:
        return limit
    if z < -limit:
        return -limit
    return z


def _sigmoid(t: float) -> float:
    if t >= 0.0:
        return 1.0 / (1.0 + math.exp(-t))
    e = math.exp(t)
    return e / (1.0 + e)


def step_from_product(x: float, z: float, b: float) -> float:
    """
    One map step given the exponent z = a*(x - b) already formed.

    Callers that also accumulate z (the adaptive system) use this so the step and
    the regret sum see the same rounded product.
    """
    if x != x:
        raise DomainError("share is NaN")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if x == b:
        return b
    t = math.log(x) - math.log1p(-x) - _clamp(z)
    return _sigmoid(t)


def map_value(x: float, a: float, b: float) -> float:
    """f(x, a, b) for plain floats."""
    if x != x:
        raise DomainError("share is NaN")
    return step_from_product(x, a * (x - b), b)


def mwu_step(x: float, p: MapParams) -> float:
    """
    One round of the MWU update.

    Args:
        x: Share on route 1, in [0, 1]
        p: Map parameters

    Returns:
        float: Next share; exactly 0, 1 or b when x is one of those
    """
    return map_value(x, p.rate, p.equilibrium)


def mwu_step_array(x, a, b):
    """
    Vectorized map evaluation.

    Args:
        x: Array of shares in [0, 1]
        a: Rate, scalar or array broadcastable with x
        b: Equilibrium, scalar or array broadcastable with x

    Returns:
        numpy.ndarray: f(x, a, b) elementwise
    """
    x = np.asarray(x, dtype=float)
    if np.isnan(x).any():
        raise DomainError("share array contains NaN")
    z = np.clip(a * (x - b), -config.EXP_CLAMP, config.EXP_CLAMP)
    return step_array_from_product(x, z, b)


def step_array_from_product(x, z, b):
    """Vectorized counterpart of step_from_product."""
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore"):
        t = logit(x) - z
    return np.where(x == b, b, expit(t))


def mwu_derivative(x: float, p: MapParams) -> float:
    """
    Derivative of the map in x.

    f'(x) = (a x^2 - a x + 1) e^{a(x-b)} / (x + (1-x) e^{a(x-b)})^2, evaluated as
    (a x^2 - a x + 1) * s * (1 - s) / (x (1 - x)) with s the logistic of the logit
    step, and as e^{ab}, e^{a(1-b)} at the boundary points.

    Args:
        x: Share in [0, 1]
        p: Map parameters

    Returns:
        float: f'(x, a, b); NaN for NaN input
    """
    return derivative_value(x, p.rate, p.equilibrium)


def derivative_value(x: float, a: float, b: float) -> float:
    """f'(x, a, b) for plain floats."""
    if x != x:
        return float("nan")
    if x == b:
        return a * b * b - a * b + 1.0
    if x <= 0.0:
        return math.exp(min(a * b, config.EXP_CLAMP))
    if x >= 1.0:
        return math.exp(min(a * (1.0 - b), config.EXP_CLAMP))
    t = math.log(x) - math.log1p(-x) - _clamp(a * (x - b))
    s = _sigmoid(t)
    c = _sigmoid(-t)
    return (a * x * x - a * x + 1.0) * s * c / (x * (1.0 - x))


def derivative_array(x, a, b):
    """Vectorized derivative; interior points only are meaningful at the clamp."""
    x = np.asarray(x, dtype=float)
    inner = np.clip(x, 1e-300, 1.0 - 1e-16)
    z = np.clip(a * (inner - b), -config.EXP_CLAMP, config.EXP_CLAMP)
    t = logit(inner) - z
    value = (a * inner * inner - a * inner + 1.0) * expit(t) * expit(-t) / (inner * (1.0 - inner))
    value = np.where(x <= 0.0, np.exp(np.minimum(a * b, config.EXP_CLAMP)), value)
    value = np.where(x >= 1.0, np.exp(np.minimum(a * (1.0 - b), config.EXP_CLAMP)), value)
    value = np.where(x == b, a * b * b - a * b + 1.0, value)
    return value


def critical_points(a: float):
    """
    Local maximum and minimum of the map.

    Args:
        a: Normalized rate, must exceed 4

    Returns:
        tuple: (x_max, x_min) = (1/2 - r, 1/2 + r) with r = sqrt(1/4 - 1/a)

    Raises:
        NoCriticalPoints: if a <= 4, where the map is monotone
    """
    if not a > 4.0:
        raise NoCriticalPoints(a)
    r = math.sqrt(0.25 - 1.0 / a)
    return 0.5 - r, 0.5 + r


def iterate_map(x0: float, a: float, b: float, k: int) -> float:
    """k-fold composition f^k(x0) at a fixed rate."""
    x = x0
    for _ in range(k):
        x = map_value(x, a, b)
    return x


def iterate_map_array(x0, a, b, k: int):
    """Vectorized k-fold composition."""
    x = np.asarray(x0, dtype=float)
    for _ in range(k):
        x = mwu_step_array(x, a, b)
    return x
