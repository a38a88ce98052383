"""
Solver Executor Module
Chooses a solver for a transformed instance, decodes and verifies every
reported minimum, and escalates annealing runs that fail verification.
"""

from dataclasses import dataclass, replace
from typing import List, Optional, Tuple
import logging

from config.settings import settings
from config.solver_config import SolverConfig
from field.normal_basis import nb_pow
from reduction.dlp_transform import TransformResult, decode_solution
from .qubo_solver import Qubo, SolveResult, exhaustive_solve, simulated_annealing

logger = logging.getLogger(__name__)

METHODS = ('auto', 'exhaustive', 'sa')


@dataclass
class InstanceSolution:
    """Solver output for one DLP instance with decoded, verified exponents."""

    solve_result: SolveResult
    exponents: List[int]
    verified: bool
    attempts: int

    @property
    def method(self) -> str:
        return self.solve_result.method


class SolverExecutor:
    """
    Runs solvers on QUBOs produced by the transform.
    Exhaustive search is exact; annealing results are checked against the
    field oracle and retried with more reads when they fail.
    """

    def __init__(self, config: Optional[SolverConfig] = None):
        self.config = config or SolverConfig.from_settings()

    def choose_method(self, num_vars: int, requested: str = 'auto') -> str:
        """
        Resolve 'auto' to 'exhaustive' up to the auto limit, else 'sa'.

        Args:
            num_vars: QUBO size
            requested: 'auto', 'exhaustive' or 'sa'

        Returns:
            Concrete method name
        """
        if requested not in METHODS:
            raise ValueError(f"unknown solver method {requested!r}; choose from {', '.join(METHODS)}")
        if requested != 'auto':
            return requested
        return 'exhaustive' if num_vars <= self.config.auto_exhaustive_limit else 'sa'

    def solve(
        self,
        q: Qubo,
        method: str = 'auto',
        config: Optional[SolverConfig] = None,
    ) -> Tuple[Optional[SolveResult], Optional[str]]:
        """
        Run one solver.

        Returns:
            Tuple of (SolveResult or None, error_message or None)
        """
        config = config or self.config
        try:
            chosen = self.choose_method(q.num_vars, method)
            logger.info(f"Solving QUBO with {q.num_vars} variables using {chosen}")
            if chosen == 'exhaustive':
                return exhaustive_solve(
                    q, max_vars=config.exhaustive_max_vars, max_argmins=config.max_argmins
                ), None
            return simulated_annealing(q, config), None
        except ValueError as e:
            error_msg = f"Solver error: {str(e)}"
            logger.error(error_msg)
            return None, error_msg

    @staticmethod
    def verify_exponents(result: TransformResult, solve_result: SolveResult) -> Tuple[List[int], bool]:
        """
        Decode every reported assignment and check t^y = h for each.

        Returns:
            (sorted distinct exponents, True iff the energy is 0 and all verify)
        """
        inst = result.instance
        exponents = sorted({decode_solution(a, result) for a in solve_result.best_assignments})
        verified = solve_result.best_energy == 0 and all(
            nb_pow(inst.generator, y, inst.fp) == inst.h for y in exponents
        )
        return exponents, verified

    def solve_instance(
        self,
        result: TransformResult,
        method: str = 'auto',
        max_retries: Optional[int] = None,
    ) -> Tuple[Optional[InstanceSolution], Optional[str]]:
        """
        Solve, decode and verify; annealing runs that fail verification are
        repeated with doubled reads.

        Args:
            result: Transformation output
            method: 'auto', 'exhaustive' or 'sa'
            max_retries: Escalation attempts (defaults to settings.MAX_RETRIES)

        Returns:
            Tuple of (InstanceSolution or None, error_message or None); an
            unverified solution is still returned after the last attempt
        """
        retries = settings.MAX_RETRIES if max_retries is None else max_retries
        config = self.config
        solution: Optional[InstanceSolution] = None

        for attempt in range(retries + 1):
            solve_result, error = self.solve(result.qubo, method, config)
            if solve_result is None:
                return None, error

            exponents, verified = self.verify_exponents(result, solve_result)
            solution = InstanceSolution(solve_result, exponents, verified, attempt + 1)
            if verified:
                if attempt > 0:
                    logger.info(f"Verified exponent on retry attempt {attempt}")
                return solution, None

            if solve_result.method != 'sa' or attempt == retries:
                break
            config = replace(config, reads=config.reads * 2)
            logger.warning(
                f"Annealing best energy {solve_result.best_energy} did not verify on attempt "
                f"{attempt + 1}; retrying with {config.reads} reads"
            )

        return solution, None
