from chaos_mwu.dynamics.mwu_map import (
    GameSpec, MapParams, normalize, denormalize, mwu_step, map_value, mwu_step_array,
    mwu_derivative, derivative_value, derivative_array, critical_points, iterate_map,
    iterate_map_array,
)
from chaos_mwu.dynamics.rate_rule import RateRule, RuleKind
from chaos_mwu.dynamics.orbit import AdaptiveState, OrbitTrace, iterate_fixed, iterate_adaptive, closed_form_check
from chaos_mwu.dynamics.ensemble import AdaptiveEnsemble

__all__ = [
    'GameSpec',
    'MapParams',
    'normalize',
    'denormalize',
    'mwu_step',
    'map_value',
    'mwu_step_array',
    'mwu_derivative',
    'derivative_value',
    'derivative_array',
    'critical_points',
    'iterate_map',
    'iterate_map_array',
    'RateRule',
    'RuleKind',
    'AdaptiveState',
    'OrbitTrace',
    'iterate_fixed',
    'iterate_adaptive',
    'closed_form_check',
    'AdaptiveEnsemble'
]
