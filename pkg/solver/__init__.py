"""
Solver package for the DLP-to-QUBO toolkit.
QUBO model, exhaustive and annealing solvers, and text formats.
The executor lives in solver.executor and is imported from there.
"""

from .qubo_solver import (
    Qubo,
    SolveResult,
    SolverGuardError,
    energy,
    exhaustive_solve,
    simulated_annealing,
)
from .qubo_io import QuboFormatError, format_qubo, parse_qubo, read_qubo, write_qubo

__all__ = [
    'Qubo', 'SolveResult', 'SolverGuardError', 'energy', 'exhaustive_solve',
    'simulated_annealing', 'QuboFormatError', 'format_qubo', 'parse_qubo',
    'read_qubo', 'write_qubo',
]
