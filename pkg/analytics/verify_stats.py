"""
Verification & Statistics Module
Independent oracles for the reduction (brute-force discrete log, exponent
verification, minima counting) and the binomial-tail argument that
annealing successes are not random guesses.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, log10
from typing import Optional, Tuple, Union
import logging

import numpy as np
from scipy.special import gammaln, logsumexp

from config.settings import settings
from field.normal_basis import FieldParams, NbElement, nb_mul, nb_pow
from reduction.dlp_transform import DlpInstance
from solver.qubo_solver import Qubo, SolveResult, exhaustive_solve

logger = logging.getLogger(__name__)

Probability = Union[Fraction, float, int]

# Tails with at most this many trials are summed exactly by default
EXACT_TAIL_MAX_TRIALS = 64


class NotInSubgroupError(ValueError):
    """Raised when the target is not a power of the generator."""


@dataclass(frozen=True)
class TrialStats:
    """Outcome counts of repeated solver reads."""

    trials: int
    successes: int
    space_bits: int = 0

    def __post_init__(self):
        if self.trials < 0 or not 0 <= self.successes <= self.trials:
            raise ValueError(
                f"need 0 <= successes <= trials, got {self.successes} of {self.trials}"
            )

    @property
    def success_rate(self) -> Fraction:
        return success_rate(self)


def dlp_brute_force(fp: FieldParams, h: NbElement) -> int:
    """
    Smallest y in [0, 2^n - 2] with t^y = h, by walking the powers of t.

    Raises:
        NotInSubgroupError: h is zero or not a power of t
    """
    if h.n != fp.n:
        raise ValueError(f"target has {h.n} coordinates, field needs {fp.n}")
    if h.is_zero():
        raise NotInSubgroupError("zero is not a power of t")

    t = fp.generator()
    power = fp.one()
    for y in range(fp.group_order):
        if power == h:
            return y
        power = nb_mul(power, t, fp)
    raise NotInSubgroupError(f"{h} is not in the subgroup generated by t")


def verify(y: int, inst: DlpInstance) -> bool:
    """True iff t^y = h."""
    if y < 0:
        raise ValueError(f"exponent must be non-negative, got {y}")
    return nb_pow(inst.generator, y, inst.fp) == inst.h


def count_minima(q: Qubo, max_vars: Optional[int] = None) -> Tuple[int, int]:
    """(minimum energy, number of argmin assignments) by exhaustive search."""
    result = exhaustive_solve(q, max_vars=max_vars)
    return result.best_energy, result.successes_at_best


def _as_fraction(p: Probability) -> Fraction:
    value = Fraction(p)
    if not 0 <= value <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return value


def exact_binomial_tail(trials: int, threshold: int, p: Probability) -> Fraction:
    """P(X >= threshold) for X ~ Binomial(trials, p) as an exact rational."""
    _check_tail_args(trials, threshold)
    q = _as_fraction(p)
    return sum(
        (comb(trials, i) * q ** i * (1 - q) ** (trials - i) for i in range(threshold, trials + 1)),
        Fraction(0),
    )


def _check_tail_args(trials: int, threshold: int):
    if trials < 0 or not 0 <= threshold <= trials:
        raise ValueError(f"need 0 <= threshold <= trials, got {threshold} of {trials}")


def _log10_fraction(value: Fraction) -> float:
    if value == 0:
        return float('-inf')
    return log10(value.numerator) - log10(value.denominator)


def binomial_tail_log10(
    trials: int,
    threshold: int,
    p: Probability,
    method: str = 'auto',
) -> float:
    """
    log10 P(X >= threshold), X ~ Binomial(trials, p).

    Terms are combined in natural-log space with log-gamma coefficients and
    log-sum-exp, so tails far below the float range stay representable.

    Args:
        trials: Number of reads
        threshold: Minimum number of successes
        p: Per-read success probability
        method: 'log', 'exact', or 'auto' (exact up to 64 trials)

    Returns:
        log10 of the tail probability (-inf when it is exactly zero)
    """
    _check_tail_args(trials, threshold)
    q = _as_fraction(p)
    if method not in ('auto', 'log', 'exact'):
        raise ValueError(f"unknown tail method {method!r}")

    if threshold == 0 or q == 1:
        return 0.0
    if q == 0:
        return float('-inf')
    if method == 'exact' or (method == 'auto' and trials <= EXACT_TAIL_MAX_TRIALS):
        return _log10_fraction(exact_binomial_tail(trials, threshold, q))

    i = np.arange(threshold, trials + 1, dtype=np.float64)
    log_terms = (
        gammaln(trials + 1.0) - gammaln(i + 1.0) - gammaln(trials - i + 1.0)
        + i * np.log(float(q)) + (trials - i) * np.log1p(-float(q))
    )
    return float(logsumexp(log_terms) / np.log(10.0))


def success_rate(stats: TrialStats) -> Fraction:
    """successes / trials, exactly."""
    if stats.trials <= 0:
        raise ValueError("success rate needs at least one trial")
    return Fraction(stats.successes, stats.trials)


def anneal_trial_stats(result: SolveResult, certified_min: int, space_bits: int = 0) -> TrialStats:
    """Reads of an annealing run that reached the certified minimum energy."""
    energies = np.asarray(result.energies, dtype=np.int64)
    if energies.size == 0:
        raise ValueError("solve result carries no per-read energies")
    successes = int((energies == certified_min).sum())
    return TrialStats(trials=int(energies.size), successes=successes, space_bits=space_bits)


@dataclass(frozen=True)
class RandomnessVerdict:
    log10_tail: float
    guess_probability: Fraction
    significance: float
    rejected: bool

    @property
    def message(self) -> str:
        if self.rejected:
            return (
                f"P(random guessing reaches this many successes) = 10^{self.log10_tail:.2f} "
                f"< {self.significance}: results are not random"
            )
        return (
            f"P(random guessing reaches this many successes) = 10^{self.log10_tail:.2f} "
            f">= {self.significance}: consistent with random guessing"
        )


def randomness_verdict(
    trials: int,
    threshold: int,
    space_bits: int,
    significance: Optional[float] = None,
) -> RandomnessVerdict:
    """
    Compare observed successes against uniform guessing over 2^space_bits
    assignments.

    Args:
        trials: Number of reads
        threshold: Observed successes
        space_bits: log2 of the solution-space size
        significance: Rejection level (defaults to settings.SIGNIFICANCE_LEVEL)

    Returns:
        RandomnessVerdict
    """
    if space_bits < 1:
        raise ValueError(f"space_bits must be >= 1, got {space_bits}")
    level = settings.SIGNIFICANCE_LEVEL if significance is None else significance
    if not 0 < level < 1:
        raise ValueError(f"significance must lie in (0, 1), got {level}")

    p = Fraction(1, 1 << space_bits)
    tail = binomial_tail_log10(trials, threshold, p)
    verdict = RandomnessVerdict(
        log10_tail=tail,
        guess_probability=p,
        significance=level,
        rejected=tail < log10(level),
    )
    logger.info(f"Randomness check ({threshold}/{trials}, 2^{space_bits} states): {verdict.message}")
    return verdict
