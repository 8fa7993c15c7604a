from chaos_mwu.diagnostics.convergence import (
    QUANTITIES, DEFAULT_HORIZONS, ConvergenceReport, ConvergenceSuite, sample_set, convergence_suite,
    pseudo_regret_decay, rate_uniform_convergence, cesaro_mean, strong_convergence_gap, decay_trend,
)

__all__ = [
    'QUANTITIES',
    'DEFAULT_HORIZONS',
    'ConvergenceReport',
    'ConvergenceSuite',
    'sample_set',
    'convergence_suite',
    'pseudo_regret_decay',
    'rate_uniform_convergence',
    'cesaro_mean',
    'strong_convergence_gap',
    'decay_trend'
]
