from chaos_mwu.geometry.intervals import (
    Interval, as_interval, interval_image, image_n, hausdorff, contains, disjoint_gap, sample_hull_cover, grid_cover,
)
from chaos_mwu.geometry.invariant_sets import (
    Envelope, PerpetualReport, DeltaSet, AbsorptionReport, ExpansionReport, envelope, check_perpetual,
    monotone_attraction_check, monotone_map_check, absorption_time_fixed, delta_set, absorption_time_adaptive,
    volume_expansion_fixed, expansion_target, volume_expansion_adaptive,
)
from chaos_mwu.geometry.thresholds import THRESHOLD_NAMES, ThresholdEstimates, rate_grid, estimate_thresholds

__all__ = [
    'Interval',
    'as_interval',
    'interval_image',
    'image_n',
    'hausdorff',
    'contains',
    'disjoint_gap',
    'sample_hull_cover',
    'grid_cover',
    'Envelope',
    'PerpetualReport',
    'DeltaSet',
    'AbsorptionReport',
    'ExpansionReport',
    'envelope',
    'check_perpetual',
    'monotone_attraction_check',
    'monotone_map_check',
    'absorption_time_fixed',
    'delta_set',
    'absorption_time_adaptive',
    'volume_expansion_fixed',
    'expansion_target',
    'volume_expansion_adaptive',
    'THRESHOLD_NAMES',
    'ThresholdEstimates',
    'rate_grid',
    'estimate_thresholds'
]
