"""
Analytics package for dlp-qubo.
Verification oracles, binomial statistics and variable-count reports.
"""

from .verify_stats import (
    EXACT_TAIL_MAX_TRIALS,
    NotInSubgroupError,
    RandomnessVerdict,
    TrialStats,
    anneal_trial_stats,
    binomial_tail_log10,
    count_minima,
    dlp_brute_force,
    exact_binomial_tail,
    randomness_verdict,
    success_rate,
    verify,
)
from .report import COUNT_COLUMNS, VariableCountReport

__all__ = [
    'EXACT_TAIL_MAX_TRIALS', 'NotInSubgroupError', 'RandomnessVerdict', 'TrialStats',
    'anneal_trial_stats', 'binomial_tail_log10', 'count_minima', 'dlp_brute_force',
    'exact_binomial_tail', 'randomness_verdict', 'success_rate', 'verify',
    'COUNT_COLUMNS', 'VariableCountReport',
]
