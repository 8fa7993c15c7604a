"""
chaos_mwu - Multiplicative Weights Update dynamics in two-route congestion games

The package evaluates the fixed-rate and adaptive-rate MWU maps and studies them:

1. dynamics: the map, its derivative, rate rules and orbit iteration
2. geometry: exact interval images, perpetual and absorbing sets, threshold scans
3. chaos: period-2/3 orbits, turbulent pairs, nested families and symbolic tracking
4. diagnostics: convergence of regret, rates, Cesaro means and orbits
5. io and cli: CSV/JSON/SVG output and the chaos-mwu command line
"""

__version__ = '1.0.0'

from chaos_mwu.errors import (
    ChaosMWUError, DomainError, NoCriticalPoints, AnalysisFailure, NotFound, NotAbsorbed, NotExpanded,
    NotTracked, PrecisionExhausted, OutputError, UNBRACKETED,
)
from chaos_mwu.dynamics import (
    GameSpec, MapParams, RateRule, normalize, mwu_step, mwu_derivative, critical_points, iterate_fixed,
    iterate_adaptive,
)
from chaos_mwu.geometry import (
    Interval, interval_image, envelope, check_perpetual, absorption_time_fixed, delta_set,
    absorption_time_adaptive, volume_expansion_fixed, volume_expansion_adaptive, estimate_thresholds,
)
from chaos_mwu.chaos import (
    period2_points, period3_find, build_turbulent_pair, refine_nested, track_symbolic, scrambled_metrics,
    lyapunov,
)
from chaos_mwu.diagnostics import (
    pseudo_regret_decay, rate_uniform_convergence, cesaro_mean, strong_convergence_gap, convergence_suite,
)

__all__ = [
    '__version__',
    'ChaosMWUError',
    'DomainError',
    'NoCriticalPoints',
    'AnalysisFailure',
    'NotFound',
    'NotAbsorbed',
    'NotExpanded',
    'NotTracked',
    'PrecisionExhausted',
    'OutputError',
    'UNBRACKETED',
    'GameSpec',
    'MapParams',
    'RateRule',
    'normalize',
    'mwu_step',
    'mwu_derivative',
    'critical_points',
    'iterate_fixed',
    'iterate_adaptive',
    'Interval',
    'interval_image',
    'envelope',
    'check_perpetual',
    'absorption_time_fixed',
    'delta_set',
    'absorption_time_adaptive',
    'volume_expansion_fixed',
    'volume_expansion_adaptive',
    'estimate_thresholds',
    'period2_points',
    'period3_find',
    'build_turbulent_pair',
    'refine_nested',
    'track_symbolic',
    'scrambled_metrics',
    'lyapunov',
    'pseudo_regret_decay',
    'rate_uniform_convergence',
    'cesaro_mean',
    'strong_convergence_gap',
    'convergence_suite'
]
