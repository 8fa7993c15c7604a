from chaos_mwu.chaos.precise import PreciseSystem, working_precision
from chaos_mwu.chaos.periodic import Period2Pair, Period3Orbit, period2_points, period3_find
from chaos_mwu.chaos.turbulence import TurbulentPair, NestedFamily, coverage_margin, build_turbulent_pair, refine_nested
from chaos_mwu.chaos.tracking import (
    TrackingConfig, SymbolicSchedule, schedule_times, adaptive_burn_in, verify_schedule, track_symbolic, track_many,
    track_pair,
)
from chaos_mwu.chaos.metrics import (
    ScrambledMetrics, TrackingEvidence, lyapunov, scrambled_metrics, tracking_evidence, equilibrium_unstable,
)

__all__ = [
    'PreciseSystem',
    'working_precision',
    'Period2Pair',
    'Period3Orbit',
    'period2_points',
    'period3_find',
    'TurbulentPair',
    'NestedFamily',
    'coverage_margin',
    'build_turbulent_pair',
    'refine_nested',
    'TrackingConfig',
    'SymbolicSchedule',
    'schedule_times',
    'adaptive_burn_in',
    'verify_schedule',
    'track_symbolic',
    'track_many',
    'track_pair',
    'ScrambledMetrics',
    'TrackingEvidence',
    'lyapunov',
    'scrambled_metrics',
    'tracking_evidence',
    'equilibrium_unstable'
]
