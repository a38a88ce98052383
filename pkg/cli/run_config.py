"""
Run Configuration
Validated description of one command-line invocation.
"""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.settings import settings
from solver.qubo_io import metadata_path
from utils.validators import ElementValidator


class Command(str, Enum):
    FIELD_INFO = 'field-info'
    TRANSFORM = 'transform'
    SOLVE = 'solve'
    DECODE = 'decode'
    E2E = 'e2e'
    REPORT = 'report'
    STATS = 'stats'


class StatsAction(str, Enum):
    TAIL = 'tail'
    RATE = 'rate'


class Method(str, Enum):
    AUTO = 'auto'
    EXHAUSTIVE = 'exhaustive'
    SA = 'sa'


class RunConfig(BaseModel):
    """
    One command with its inputs. Fields a command does not use are ignored;
    fields it needs are checked in check_command_inputs.
    """

    model_config = ConfigDict(frozen=True, extra='forbid')

    command: Command
    stats_action: Optional[StatsAction] = None

    # Instance
    n: Optional[int] = Field(default=None, ge=2)
    h_nb: Optional[str] = None
    h_poly: Optional[str] = None

    # Solver
    method: Method = Method.AUTO
    reads: Optional[int] = Field(default=None, ge=1)
    sweeps: Optional[int] = Field(default=None, ge=1)
    restarts: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    max_retries: Optional[int] = Field(default=None, ge=0)

    # Files
    in_path: Optional[Path] = None
    out_path: Optional[Path] = None
    meta_path: Optional[Path] = None
    solution_path: Optional[Path] = None
    plot_path: Optional[Path] = None
    csv_path: Optional[Path] = None

    # Report
    n_list: List[int] = Field(default_factory=list)
    target_exponent: int = Field(default=1, ge=0)

    # Statistics
    trials: Optional[int] = Field(default=None, ge=1)
    threshold: Optional[int] = Field(default=None, ge=0)
    successes: Optional[int] = Field(default=None, ge=0)
    space_bits: Optional[int] = Field(default=None, ge=1)
    significance: Optional[float] = Field(default=None, gt=0, lt=1)

    # Output
    machine: bool = False
    rotations: bool = False
    dump: bool = False

    @field_validator('n_list')
    @classmethod
    def check_n_list(cls, value: List[int]) -> List[int]:
        for n in value:
            ok, message = ElementValidator.validate_degree(n)
            if not ok:
                raise ValueError(message)
        return value

    @model_validator(mode='after')
    def check_command_inputs(self) -> 'RunConfig':
        missing = []

        def need(name: str, present: bool):
            if not present:
                missing.append(name)

        command = self.command
        if command in (Command.FIELD_INFO, Command.TRANSFORM, Command.E2E):
            need('--n', self.n is not None)
        if command in (Command.TRANSFORM, Command.E2E):
            if self.h_nb is not None and self.h_poly is not None:
                raise ValueError("give either --h-nb or --h-poly, not both")
            need('--h-nb or --h-poly', self.h_nb is not None or self.h_poly is not None)
        if command == Command.TRANSFORM:
            need('--out', self.out_path is not None)
        if command == Command.SOLVE:
            need('--in', self.in_path is not None)
        if command == Command.DECODE:
            need('--in or --meta', self.in_path is not None or self.meta_path is not None)
            need('--solution', self.solution_path is not None)
        if command == Command.REPORT:
            need('--n-list', bool(self.n_list))
        if command == Command.STATS:
            need('tail|rate', self.stats_action is not None)
            need('--trials', self.trials is not None)
            if self.stats_action == StatsAction.TAIL:
                need('--threshold', self.threshold is not None)
                need('--space-bits', self.space_bits is not None)
            elif self.stats_action == StatsAction.RATE:
                need('--successes', self.successes is not None)

        if missing:
            raise ValueError(f"{command.value} requires {', '.join(missing)}")
        return self

    def solver_overrides(self) -> dict:
        """SolverConfig overrides taken from the command line."""
        return {'reads': self.reads, 'sweeps': self.sweeps, 'restarts': self.restarts, 'seed': self.seed}

    def sidecar_path(self) -> Optional[Path]:
        if self.meta_path is not None:
            return self.meta_path
        if self.in_path is not None:
            return metadata_path(self.in_path)
        return None
