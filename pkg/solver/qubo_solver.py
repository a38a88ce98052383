"""
QUBO Solver Module
QUBO data model, exact exhaustive minimization and seeded simulated
annealing (neal). Energies are integers end to end.
"""

from dataclasses import dataclass, field, replace
from time import perf_counter
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Sequence, Tuple
import logging

import dimod
import neal
import numpy as np

from config.solver_config import SolverConfig

if TYPE_CHECKING:
    from reduction.pseudo_boolean import PbPoly

logger = logging.getLogger(__name__)

# Low block enumerated as a dense matrix; higher bits are walked in Gray-code order
_LOW_BLOCK_BITS = 16


class SolverGuardError(ValueError):
    """Raised when a QUBO is too large for exhaustive enumeration."""


def _normalize_terms(
    num_vars: int,
    linear: Mapping[int, int],
    quadratic: Mapping[Tuple[int, int], int],
) -> Tuple[Dict[int, int], Dict[Tuple[int, int], int]]:
    lin: Dict[int, int] = {}
    quad: Dict[Tuple[int, int], int] = {}

    def check(index: int):
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} outside 0..{num_vars - 1}")

    for i, coeff in linear.items():
        check(int(i))
        lin[int(i)] = lin.get(int(i), 0) + int(coeff)
    for (i, j), coeff in quadratic.items():
        i, j = int(i), int(j)
        check(i)
        check(j)
        if i == j:
            lin[i] = lin.get(i, 0) + int(coeff)
            continue
        key = (min(i, j), max(i, j))
        quad[key] = quad.get(key, 0) + int(coeff)

    lin = {i: c for i, c in sorted(lin.items()) if c}
    quad = {k: c for k, c in sorted(quad.items()) if c}
    return lin, quad


@dataclass(frozen=True)
class Qubo:
    """
    offset + sum(linear[i] * x_i) + sum(quadratic[i, j] * x_i * x_j), i < j,
    over dense 0-based indices.
    """

    num_vars: int
    linear: Mapping[int, int] = field(default_factory=dict)
    quadratic: Mapping[Tuple[int, int], int] = field(default_factory=dict)
    offset: int = 0

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError(f"num_vars must be >= 0, got {self.num_vars}")
        lin, quad = _normalize_terms(self.num_vars, self.linear, self.quadratic)
        object.__setattr__(self, 'linear', lin)
        object.__setattr__(self, 'quadratic', quad)
        object.__setattr__(self, 'offset', int(self.offset))

    @classmethod
    def from_pb(cls, poly: 'PbPoly', variables: Sequence[int]) -> 'Qubo':
        """
        Build from a degree-2 polynomial; variables[i] becomes index i.

        Args:
            poly: Multilinear polynomial of degree <= 2
            variables: Ordered VarIds; must cover every variable of poly

        Returns:
            Qubo over len(variables) indices
        """
        poly.require_degree(2)
        index = {var: i for i, var in enumerate(variables)}
        missing = [v for v in poly.variables if v not in index]
        if missing:
            raise ValueError(f"polynomial uses variables outside the QUBO: {missing}")

        linear: Dict[int, int] = {}
        quadratic: Dict[Tuple[int, int], int] = {}
        for monomial, coeff in poly.terms:
            if len(monomial) == 1:
                linear[index[monomial[0]]] = coeff
            elif len(monomial) == 2:
                quadratic[(index[monomial[0]], index[monomial[1]])] = coeff
        return cls(len(variables), linear, quadratic, poly.constant_term)

    def terms(self) -> List[Tuple[int, int, int]]:
        """All terms as (i, j, coeff) sorted by (i, j); linear terms have i == j."""
        rows = [(i, i, c) for i, c in self.linear.items()]
        rows.extend((i, j, c) for (i, j), c in self.quadratic.items())
        return sorted(rows)

    def to_matrix(self) -> np.ndarray:
        """Upper-triangular integer matrix with linear terms on the diagonal."""
        matrix = np.zeros((self.num_vars, self.num_vars), dtype=np.int64)
        for i, c in self.linear.items():
            matrix[i, i] = c
        for (i, j), c in self.quadratic.items():
            matrix[i, j] = c
        return matrix

    def to_bqm(self) -> dimod.BinaryQuadraticModel:
        """Binary quadratic model over labels 0..num_vars-1, offset included."""
        linear = {i: self.linear.get(i, 0) for i in range(self.num_vars)}
        return dimod.BinaryQuadraticModel(linear, dict(self.quadratic), self.offset, dimod.BINARY)

    def relabel(self, permutation: Sequence[int]) -> 'Qubo':
        """Move old index i to permutation[i]."""
        if sorted(permutation) != list(range(self.num_vars)):
            raise ValueError("relabel needs a permutation of all variable indices")
        linear = {permutation[i]: c for i, c in self.linear.items()}
        quadratic = {(permutation[i], permutation[j]): c for (i, j), c in self.quadratic.items()}
        return Qubo(self.num_vars, linear, quadratic, self.offset)

    def scale(self, factor: int) -> 'Qubo':
        if factor <= 0:
            raise ValueError(f"scale factor must be positive, got {factor}")
        return Qubo(
            self.num_vars,
            {i: c * factor for i, c in self.linear.items()},
            {k: c * factor for k, c in self.quadratic.items()},
            self.offset * factor,
        )


@dataclass
class SolveResult:
    """
    Outcome of one solver run; assignments are tuples of 0/1 by index.

    successes_at_best counts reads (annealing) or assignments (exhaustive)
    at best_energy; exhaustive runs may keep fewer best_assignments.
    """

    best_energy: int
    best_assignments: List[Tuple[int, ...]]
    reads: int
    successes_at_best: int
    method: str
    energies: Tuple[int, ...] = ()
    elapsed_seconds: float = field(default=0.0, compare=False)

    @property
    def best_assignment(self) -> Tuple[int, ...]:
        return self.best_assignments[0]

    def energy_histogram(self) -> Dict[int, int]:
        """Final energy -> number of reads (annealing runs only)."""
        values, counts = np.unique(np.asarray(self.energies, dtype=np.int64), return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def energy(q: Qubo, assignment) -> int:
    """
    Exact energy of one assignment.

    Args:
        q: QUBO
        assignment: Sequence indexed 0..num_vars-1, or mapping index -> bit

    Returns:
        Integer energy
    """
    if isinstance(assignment, Mapping):
        missing = [i for i in range(q.num_vars) if i not in assignment]
    else:
        missing = list(range(len(assignment), q.num_vars))
    if missing:
        raise ValueError(f"assignment is missing variables {missing}")

    total = q.offset
    for i, c in q.linear.items():
        total += c * int(assignment[i])
    for (i, j), c in q.quadratic.items():
        total += c * int(assignment[i]) * int(assignment[j])
    return total


def _batch_energies(states: np.ndarray, upper: np.ndarray, offset: int) -> np.ndarray:
    return offset + ((states @ upper) * states).sum(axis=1)


def _bit_table(count: int) -> np.ndarray:
    index = np.arange(1 << count, dtype=np.int64)
    return (index[:, None] >> np.arange(count, dtype=np.int64)) & 1


def exhaustive_solve(
    q: Qubo, max_vars: Optional[int] = None, max_argmins: Optional[int] = None
) -> SolveResult:
    """
    Enumerate all 2^V assignments and return the exact minimum.

    successes_at_best is the exact number of argmins; at most max_argmins
    of them are kept in best_assignments, sorted by integer value (index 0
    is the least significant bit).

    Raises:
        SolverGuardError: num_vars exceeds the guard
    """
    defaults = SolverConfig.from_settings()
    limit = defaults.exhaustive_max_vars if max_vars is None else max_vars
    keep = defaults.max_argmins if max_argmins is None else max_argmins
    if keep < 1:
        raise ValueError(f"max_argmins must be >= 1, got {keep}")
    if q.num_vars > limit:
        raise SolverGuardError(
            f"{q.num_vars} variables exceed the exhaustive guard of {limit}; "
            f"use simulated annealing instead"
        )

    started = perf_counter()
    count = q.num_vars
    if count == 0:
        return SolveResult(q.offset, [()], 1, 1, 'exhaustive', elapsed_seconds=perf_counter() - started)

    upper = q.to_matrix()
    low_bits = min(count, _LOW_BLOCK_BITS)
    high_bits = count - low_bits
    low_states = _bit_table(low_bits)

    low_upper = upper[:low_bits, :low_bits]
    totals = _batch_energies(low_states, low_upper, q.offset)
    # Column j: contribution of high bit j against every low state
    cross = low_states @ upper[:low_bits, low_bits:]
    high_upper = upper[low_bits:, low_bits:]
    high_sym = high_upper + high_upper.T - np.diag(np.diag(high_upper))
    high_state = np.zeros(high_bits, dtype=np.int64)

    best = None
    found = 0
    winners: List[int] = []

    def collect(high_value: int):
        nonlocal best, found, winners
        current = int(totals.min())
        if best is None or current < best:
            best = current
            found = 0
            winners = []
        if current == best:
            hits = np.flatnonzero(totals == current)
            found += int(hits.size)
            room = keep - len(winners)
            winners.extend(int(low_index) | (high_value << low_bits) for low_index in hits[:room])

    collect(0)
    gray = 0
    for step in range(1, 1 << high_bits):
        j = (step & -step).bit_length() - 1
        sign = 1 - 2 * int(high_state[j])
        # Field on bit j from the other set high bits plus its own linear term
        others = int(high_sym[j] @ high_state) - int(high_sym[j, j] * high_state[j])
        totals += sign * (cross[:, j] + high_upper[j, j] + others)
        high_state[j] ^= 1
        gray ^= 1 << j
        collect(gray)

    assignments = [
        tuple((value >> i) & 1 for i in range(count)) for value in sorted(winners)
    ]
    elapsed = perf_counter() - started
    if found > len(assignments):
        logger.warning(f"Keeping {len(assignments)} of {found} argmins")
    logger.info(
        f"Exhaustive solve over {count} variables: min energy {best}, "
        f"{found} argmin(s) in {elapsed:.3f}s"
    )
    return SolveResult(
        best_energy=best,
        best_assignments=assignments,
        reads=1 << count,
        successes_at_best=found,
        method='exhaustive',
        elapsed_seconds=elapsed,
    )


def read_seed(seed: int, read: int) -> int:
    """32-bit sampler seed of one annealing read, derived from (seed, read)."""
    return int(np.random.SeedSequence([seed, read]).generate_state(1)[0])


def simulated_annealing(q: Qubo, config: Optional[SolverConfig] = None, **overrides) -> SolveResult:
    """
    Seeded simulated annealing on neal's sampler.

    Every read is one sampler call with its own seed from (seed, read index)
    that runs `restarts` anneals and keeps the lowest; a read therefore does
    not depend on how many reads the run has. Final states are re-evaluated
    with integer arithmetic.

    Args:
        q: QUBO
        config: Solver parameters (defaults from settings)
        **overrides: Field overrides applied on top of config (None ignored)

    Returns:
        SolveResult with the single best read and per-read final energies
    """
    config = config or SolverConfig.from_settings()
    clean = {key: value for key, value in overrides.items() if value is not None}
    if clean:
        config = replace(config, **clean)
    if config.reads < 1:
        raise ValueError(f"reads must be >= 1, got {config.reads}")
    parameters = config.annealing_parameters()

    started = perf_counter()
    count = q.num_vars
    if count == 0:
        return SolveResult(
            q.offset, [()], config.reads, config.reads, 'sa',
            energies=(q.offset,) * config.reads, elapsed_seconds=perf_counter() - started,
        )

    upper = q.to_matrix()
    bqm = q.to_bqm()
    sampler = neal.SimulatedAnnealingSampler()

    states = np.empty((config.reads, count), dtype=np.int64)
    for read in range(config.reads):
        sampleset = sampler.sample(bqm, seed=read_seed(config.seed, read), **parameters)
        columns = [sampleset.variables.index(i) for i in range(count)]
        samples = np.asarray(sampleset.record.sample[:, columns], dtype=np.int64)
        restart_energies = _batch_energies(samples, upper, q.offset)
        states[read] = samples[int(np.argmin(restart_energies))]

    energies = _batch_energies(states, upper, q.offset)
    best = int(energies.min())
    first = int(np.argmax(energies == best))
    successes = int((energies == best).sum())
    elapsed = perf_counter() - started

    logger.info(
        f"Simulated annealing: {config.reads} reads x {config.restarts} restarts x "
        f"{config.sweeps} sweeps over {count} variables, best energy {best} reached by "
        f"{successes} read(s) in {elapsed:.3f}s"
    )
    return SolveResult(
        best_energy=best,
        best_assignments=[tuple(int(b) for b in states[first])],
        reads=config.reads,
        successes_at_best=successes,
        method='sa',
        energies=tuple(int(e) for e in energies),
        elapsed_seconds=elapsed,
    )
