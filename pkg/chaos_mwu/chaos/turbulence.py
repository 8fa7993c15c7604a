#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Turbulent pairs and their nested shrinking families.

A turbulent pair is two disjoint closed intervals J, K whose images under f^2
each cover J and K. It is built from a period-3 orbit x -> f(x) -> f^2(x) with
f^2(x) < x < f(x):

    d in (x, f(x))  with f(d) = x, so d < f^2(d) = f(x)
    z just above f^2(x), so close that f^2(z) > d
    q just below x with f^2(q) < z
    c just above x with f^2(c) < z

giving J = [z, q] and K = [c, d]. Orbits of the mirror shape are handled through
the conjugacy x -> 1 - x, b -> 1 - b.

Nested families shrink K (and J) level by level: V^{k+1} is the smaller of two
subintervals of V^k whose f^{2k+2}-images cover K and J. Those levels shrink at
the Lyapunov rate, so refinement runs in extended precision.
"""

from dataclasses import dataclass, field, replace
from typing import List, Tuple

from scipy.optimize import brentq

from chaos_mwu.config import config
from chaos_mwu.errors import AnalysisFailure, DomainError, NotFound, PrecisionExhausted
from chaos_mwu.dynamics.mwu_map import MapParams, map_value, iterate_map
from chaos_mwu.dynamics.rate_rule import RateRule
from chaos_mwu.geometry.intervals import Interval, image_n, disjoint_gap
from chaos_mwu.geometry.invariant_sets import envelope
from chaos_mwu.chaos.periodic import Period3Orbit, period3_find
from chaos_mwu.chaos.precise import PreciseSystem
from chaos_mwu.utils.logger import setup_logger
from chaos_mwu.utils.retry import retry

logger = setup_logger("turbulence")

MIN_GAP = 1e-9


@dataclass(frozen=True)
class TurbulentPair:
    J: Interval
    K: Interval
    rate: float
    equilibrium: float
    period3_witness: Tuple[float, float, float]
    margin: float

    @property
    def params(self) -> MapParams:
        return MapParams(self.rate, self.equilibrium)

    @property
    def hull(self) -> Interval:
        return Interval(min(self.J.lo, self.K.lo), max(self.J.hi, self.K.hi))

    @property
    def gap(self) -> float:
        return disjoint_gap(self.J, self.K)

    def mirrored(self) -> "TurbulentPair":
        return TurbulentPair(
            J=self.J.mirrored(),
            K=self.K.mirrored(),
            rate=self.rate,
            equilibrium=1.0 - self.equilibrium,
            period3_witness=tuple(1.0 - x for x in self.period3_witness),
            margin=self.margin,
        )

    def to_dict(self) -> dict:
        return {
            "J": self.J.to_dict(),
            "K": self.K.to_dict(),
            "rate": self.rate,
            "equilibrium": self.equilibrium,
            "period3_witness": list(self.period3_witness),
            "margin": self.margin,
            "gap": self.gap,
        }


def coverage_margin(pair: TurbulentPair, J: Interval = None, K: Interval = None) -> float:
    """
    Smallest distance by which f^2(J) and f^2(K) overhang the hull of J and K,
    using exact interval images. Positive means both images cover J and K.
    """
    J = J or pair.J
    K = K or pair.K
    p = pair.params
    hull = Interval(min(J.lo, K.lo), max(J.hi, K.hi))
    margins = []
    for I in (J, K):
        image = image_n(I, p, 2)
        margins.append(min(hull.lo - image.lo, image.hi - hull.hi))
    return min(margins)


def _shrink(offset: float, accept, steps: int):
    for _ in range(steps):
        if accept(offset):
            return offset
        offset *= 0.5
    return None


def _build_standard(orbit: Period3Orbit) -> TurbulentPair:
    a, b = orbit.rate, orbit.equilibrium
    x, fx, f2x = orbit.points
    steps = config.ANCHOR_STEPS

    d = brentq(lambda t: map_value(t, a, b) - x, x, fx, xtol=1e-15)
    f2d = iterate_map(d, a, b, 2)
    if not d < f2d:
        raise NotFound(f"anchor d={d!r} fails d < f^2(d)", rate=a, equilibrium=b)

    def f2(t):
        return iterate_map(t, a, b, 2)

    z_off = _shrink(0.25 * (x - f2x), lambda off: f2(f2x + off) > d, steps)
    if z_off is None:
        raise NotFound("no anchor z with f^2(z) > d", rate=a, equilibrium=b)
    z = f2x + z_off

    q_off = _shrink(0.25 * (x - z), lambda off: f2(x - off) < z, steps)
    if q_off is None:
        raise NotFound("no anchor q with f^2(q) < z", rate=a, equilibrium=b)
    q = x - q_off

    c_off = _shrink(0.25 * (d - x), lambda off: f2(x + off) < z, steps)
    if c_off is None:
        raise NotFound("no anchor c with f^2(c) < z", rate=a, equilibrium=b)
    c = x + c_off

    J, K = Interval(z, q), Interval(c, d)
    if disjoint_gap(J, K) < MIN_GAP:
        raise NotFound(f"J and K closer than {MIN_GAP}", rate=a, equilibrium=b)
    pair = TurbulentPair(J=J, K=K, rate=a, equilibrium=b, period3_witness=orbit.points, margin=0.0)
    margin = coverage_margin(pair)
    if not margin > 0.0:
        raise NotFound(f"double images of J and K do not cover both (margin {margin!r})", rate=a, equilibrium=b)
    env = envelope(MapParams(a, b))
    if not (env.f_min < J.lo and K.hi < env.f_max):
        raise NotFound("turbulent pair leaves the interior of F(a)", rate=a, equilibrium=b)
    return TurbulentPair(J=J, K=K, rate=a, equilibrium=b, period3_witness=orbit.points, margin=margin)


def build_turbulent_pair(p: MapParams, orbit: Period3Orbit = None) -> TurbulentPair:
    """
    Construct J, K from a period-3 orbit.

    Args:
        p: Map parameters
        orbit: Period-3 orbit at p; found with period3_find when omitted

    Returns:
        TurbulentPair: with a positive exact coverage margin

    Raises:
        NotFound: no period-3 orbit, or an anchor search fails within ANCHOR_STEPS halvings
    """
    orbit = orbit or period3_find(p)
    if orbit.shape == "mirror":
        pair = replace(_build_standard(orbit.mirrored()).mirrored(),
                       equilibrium=p.equilibrium, period3_witness=orbit.points)
    else:
        pair = _build_standard(orbit)
    logger.info(
        f"Turbulent pair at a={p.rate}, b={p.equilibrium}: J=[{pair.J.lo:.10f}, {pair.J.hi:.10f}] "
        f"K=[{pair.K.lo:.10f}, {pair.K.hi:.10f}] margin={pair.margin:.3e}"
    )
    return pair


@dataclass
class NestedFamily:
    """
    Nested levels V^0 = K ⊇ V^1 ⊇ ... and U^0 = J ⊇ U^1 ⊇ ...

    Endpoints are mpmath numbers at ``precision`` bits. ``margins[k]`` is the
    smaller of the two overhangs of f^{2k+2}(V^k) and f^{2k+2}(U^k) past the
    hull of J and K.
    """
    base: TurbulentPair
    V: List[tuple] = field(default_factory=list)
    U: List[tuple] = field(default_factory=list)
    margins: List[object] = field(default_factory=list)
    precision: int = 0

    @property
    def depth(self) -> int:
        return len(self.V) - 1

    def box(self, level: int, bit: int):
        """Target interval for one tracking level: V^level for bit 0, U^level for bit 1."""
        return self.V[level] if bit == 0 else self.U[level]

    def diameters(self, which: str = "V"):
        levels = self.V if which == "V" else self.U
        return [hi - lo for lo, hi in levels]

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "depth": self.depth,
            "precision": self.precision,
            "V": [{"lo": str(lo), "hi": str(hi)} for lo, hi in self.V],
            "U": [{"lo": str(lo), "hi": str(hi)} for lo, hi in self.U],
            "margins": [float(m) for m in self.margins],
        }


def classify(values, lo, hi):
    """-1 at or below lo, +1 at or above hi, 0 strictly inside."""
    return [-1 if v <= lo else (1 if v >= hi else 0) for v in values]


def crossings(classes):
    """
    Index pairs (i, j) where the sampled function passes from one side of a
    target to the other with every sample in between strictly inside.
    """
    found = []
    last = None
    for j, c in enumerate(classes):
        if c == 0:
            continue
        if last is not None and classes[last] == -c:
            found.append((last, j))
        last = j
    return found


def bisect_level(fn, lo, hi, level, keep_low_side: bool, resolution, max_steps: int = 400):
    """
    Bisect for fn(t) = level on [lo, hi] where fn(lo) and fn(hi) straddle level.

    Returns the final bracket endpoint lying on the requested side: the one
    that started at ``lo`` when keep_low_side is true.
    """
    low_sign = fn(lo) >= level
    for _ in range(max_steps):
        if hi - lo <= resolution:
            break
        mid = (lo + hi) / 2
        if (fn(mid) >= level) == low_sign:
            lo = mid
        else:
            hi = mid
    return lo if keep_low_side else hi


def _subinterval(system: PreciseSystem, a, interval, steps: int, target, grid: int):
    """
    Smallest sampled crossing of target by f^steps over interval, with
    endpoints chosen so that the exact image covers target.
    """
    lo, hi = interval
    t_lo, t_hi = target
    width = hi - lo
    ts = [lo + width * i / (grid - 1) for i in range(grid)]
    values = [system.iterate(t, a, steps) for t in ts]
    classes = classify(values, t_lo, t_hi)
    best = None
    for i, j in crossings(classes):
        span = ts[j] - ts[i]
        if best is None or span < best[0]:
            best = (span, i, j)
    if best is None:
        return None
    _, i, j = best
    resolution = (ts[1] - ts[0]) * system.ctx.ldexp(1, -30)

    def fn(t):
        return system.iterate(t, a, steps)

    first_level = t_lo if classes[i] < 0 else t_hi
    second_level = t_hi if classes[i] < 0 else t_lo
    # keep the endpoints on the outside of target so the image covers it
    left = bisect_level(fn, ts[i], ts[i + 1], first_level, True, resolution)
    right = bisect_level(fn, ts[j - 1], ts[j], second_level, False, resolution)
    return (min(left, right), max(left, right))


def _level_margin(system: PreciseSystem, a, interval, steps: int, hull):
    image_lo, image_hi = system.image_n(interval[0], interval[1], a, steps)
    return min(hull[0] - image_lo, image_hi - hull[1])


@retry(exceptions=(PrecisionExhausted,))
def refine_nested(pair: TurbulentPair, depth: int, grid: int = 257, *, precision: int = None) -> NestedFamily:
    """
    Build the nested family of a turbulent pair to the given depth.

    Args:
        pair: Turbulent pair
        depth: Number of refinement levels (V^0..V^depth)
        grid: Samples per level for isolating crossings
        precision: Bits of working precision; defaults to 64 + 8 bits per map step

    Returns:
        NestedFamily: levels satisfying the halving bound and positive coverage margins

    Raises:
        PrecisionExhausted: a level cannot be resolved at the working precision
        AnalysisFailure: the two preimages of a level overlap or fail the halving bound
    """
    if depth < 0:
        raise DomainError(f"depth must be nonnegative, got {depth!r}")
    precision = precision or max(config.TRACKING_MIN_BITS, 64 + config.TRACKING_BITS_PER_STEP * (2 * depth + 2))
    system = PreciseSystem(RateRule.constant(pair.rate), pair.equilibrium, precision)
    mpf = system.mpf
    a = system.limit_rate
    K = (mpf(pair.K.lo), mpf(pair.K.hi))
    J = (mpf(pair.J.lo), mpf(pair.J.hi))
    hull = (min(J[0], K[0]), max(J[1], K[1]))
    family = NestedFamily(base=pair, V=[K], U=[J], margins=[], precision=precision)

    for k in range(depth + 1):
        steps = 2 * k + 2
        margin = min(_level_margin(system, a, family.V[k], steps, hull),
                     _level_margin(system, a, family.U[k], steps, hull))
        if not margin > 0:
            raise PrecisionExhausted(f"level {k} images no longer cover J and K (margin {margin})",
                                     level=k, precision=precision)
        family.margins.append(margin)
        if k == depth:
            break
        for levels in (family.V, family.U):
            current = levels[k]
            z1 = _subinterval(system, a, current, steps, K, grid)
            z2 = _subinterval(system, a, current, steps, J, grid)
            if z1 is None or z2 is None:
                raise PrecisionExhausted(f"no crossing of J or K inside level {k}", level=k, precision=precision)
            if not (z1[1] < z2[0] or z2[1] < z1[0]):
                raise AnalysisFailure(f"level {k}: preimages of K and J overlap", level=k)
            smaller = min((z1, z2), key=lambda z: z[1] - z[0])
            if 2 * (smaller[1] - smaller[0]) > current[1] - current[0]:
                raise AnalysisFailure(f"level {k + 1} is wider than half of level {k}", level=k + 1)
            if smaller[1] - smaller[0] <= system.resolution(1) * 256:
                raise PrecisionExhausted(f"level {k + 1} below working precision", level=k + 1, precision=precision)
            levels.append(smaller)
        logger.debug(
            f"Level {k + 1}: diam V={float(family.V[-1][1] - family.V[-1][0]):.3e} "
            f"diam U={float(family.U[-1][1] - family.U[-1][0]):.3e} margin={float(margin):.3e}"
        )

    logger.info(f"Nested family to depth {depth} at {precision} bits")
    return family
