"""
Solver Configuration
Bundles the annealing and exhaustive-search knobs into one immutable object.
"""

from dataclasses import dataclass, replace
from typing import Any, Dict
import logging

from .settings import settings

logger = logging.getLogger(__name__)

BETA_SCHEDULES = ('geometric', 'linear')


@dataclass(frozen=True)
class SolverConfig:
    """
    Solver parameters shared by the CLI, the executor and the tests.

    One annealing read keeps the best of `restarts` independent anneals,
    each `sweeps` sweeps long with inverse temperature rising from beta_min
    to beta_max (geometric by default).
    """

    reads: int = 1000
    sweeps: int = 200
    restarts: int = 32
    beta_min: float = 0.1
    beta_max: float = 10.0
    schedule: str = 'geometric'
    seed: int = 20240601
    exhaustive_max_vars: int = 28
    auto_exhaustive_limit: int = 24
    max_argmins: int = 1024

    @classmethod
    def from_settings(cls, **overrides) -> 'SolverConfig':
        """
        Build a config from environment settings, applying explicit overrides.

        Args:
            **overrides: Field values that take precedence (None values are ignored)

        Returns:
            SolverConfig instance
        """
        config = cls(
            reads=settings.SA_READS,
            sweeps=settings.SA_SWEEPS,
            restarts=settings.SA_RESTARTS,
            beta_min=settings.SA_BETA_MIN,
            beta_max=settings.SA_BETA_MAX,
            seed=settings.DEFAULT_SEED,
            exhaustive_max_vars=settings.EXHAUSTIVE_MAX_VARS,
            auto_exhaustive_limit=settings.AUTO_EXHAUSTIVE_LIMIT,
            max_argmins=settings.MAX_STORED_ARGMINS,
        )
        clean = {key: value for key, value in overrides.items() if value is not None}
        if clean:
            config = replace(config, **clean)
        return config

    def annealing_parameters(self) -> Dict[str, Any]:
        """
        Keyword arguments for one neal sampling call.

        Returns:
            num_reads, num_sweeps, beta_range and beta_schedule_type

        Raises:
            ValueError: Non-positive counts, an empty beta range or an unknown schedule
        """
        if self.sweeps < 1:
            raise ValueError(f"sweeps must be >= 1, got {self.sweeps}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not 0 < self.beta_min <= self.beta_max:
            raise ValueError(
                f"invalid beta range [{self.beta_min}, {self.beta_max}]"
            )
        if self.schedule not in BETA_SCHEDULES:
            raise ValueError(f"Unknown beta schedule: {self.schedule}")

        return {
            'num_reads': self.restarts,
            'num_sweeps': self.sweeps,
            'beta_range': (self.beta_min, self.beta_max),
            'beta_schedule_type': self.schedule,
        }

    def describe(self) -> dict:
        """Summary of the annealing knobs (for logs and metadata)."""
        return {
            'reads': self.reads,
            'sweeps': self.sweeps,
            'restarts': self.restarts,
            'beta_min': self.beta_min,
            'beta_max': self.beta_max,
            'schedule': self.schedule,
            'seed': self.seed,
        }
