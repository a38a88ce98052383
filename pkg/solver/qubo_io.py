"""
QUBO File I/O Module
Text formats for QUBO problems, transform sidecars and solver results.

QUBO file: optional '#' comment lines, one header 'qubo <num_vars> <offset>',
then one '<i> <j> <coeff>' line per term (i == j linear, i < j quadratic),
sorted by (i, j).
"""

from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union
import logging

from .qubo_solver import Qubo, SolveResult

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class QuboFormatError(ValueError):
    """Raised for malformed QUBO, sidecar or solution text."""


def format_qubo(q: Qubo, comments: Iterable[str] = ()) -> str:
    lines = [f"# {comment}" for comment in comments]
    lines.append(f"qubo {q.num_vars} {q.offset}")
    lines.extend(f"{i} {j} {c}" for i, j, c in q.terms())
    return '\n'.join(lines) + '\n'


def parse_qubo(text: str) -> Qubo:
    """
    Parse QUBO text.

    Args:
        text: File contents

    Returns:
        Qubo instance

    Raises:
        QuboFormatError: missing header, bad numbers, i > j or duplicate terms
    """
    header: Optional[Tuple[int, int]] = None
    linear: Dict[int, int] = {}
    quadratic: Dict[Tuple[int, int], int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()

        if header is None:
            if len(parts) != 3 or parts[0] != 'qubo':
                raise QuboFormatError(f"line {number}: expected 'qubo <num_vars> <offset>'")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise QuboFormatError(f"line {number}: header values must be integers") from None
            if header[0] < 0:
                raise QuboFormatError(f"line {number}: negative variable count")
            continue

        if len(parts) != 3:
            raise QuboFormatError(f"line {number}: expected '<i> <j> <coeff>'")
        try:
            i, j, coeff = (int(part) for part in parts)
        except ValueError:
            raise QuboFormatError(f"line {number}: term values must be integers") from None
        if i > j:
            raise QuboFormatError(f"line {number}: quadratic terms need i < j, got {i} {j}")
        if not (0 <= i and j < header[0]):
            raise QuboFormatError(f"line {number}: index outside 0..{header[0] - 1}")

        target = linear if i == j else quadratic
        key = i if i == j else (i, j)
        if key in target:
            raise QuboFormatError(f"line {number}: duplicate term {i} {j}")
        target[key] = coeff

    if header is None:
        raise QuboFormatError("missing 'qubo' header line")
    return Qubo(header[0], linear, quadratic, header[1])


def write_qubo(q: Qubo, path: PathLike, comments: Iterable[str] = ()):
    Path(path).write_text(format_qubo(q, comments))
    logger.info(f"Wrote QUBO with {q.num_vars} variables to {path}")


def read_qubo(path: PathLike) -> Qubo:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise QuboFormatError(f"cannot read QUBO file {path}: {str(e)}") from e
    return parse_qubo(text)


def metadata_path(qubo_path: PathLike) -> Path:
    """Sidecar location next to a QUBO file: 'x.qubo' -> 'x.qubo.meta'."""
    path = Path(qubo_path)
    return path.with_name(path.name + '.meta')


def write_lines(lines: Iterable[str], path: PathLike):
    Path(path).write_text('\n'.join(lines) + '\n')


def read_lines(path: PathLike) -> List[str]:
    try:
        return Path(path).read_text().splitlines()
    except OSError as e:
        raise QuboFormatError(f"cannot read {path}: {str(e)}") from e


def bitstring(assignment: Iterable[int]) -> str:
    """Index 0 first."""
    return ''.join(str(int(bit)) for bit in assignment)


def parse_bitstring(text: str) -> Tuple[int, ...]:
    cleaned = text.strip()
    if any(ch not in '01' for ch in cleaned):
        raise QuboFormatError(f"not a 0/1 assignment: {text!r}")
    return tuple(int(ch) for ch in cleaned)


def solution_lines(result: SolveResult) -> List[str]:
    """key=value lines for a solver result; every stored argmin is listed."""
    lines = [
        f"method={result.method}",
        f"energy={result.best_energy}",
        f"reads={result.reads}",
        f"successes_at_best={result.successes_at_best}",
        f"argmin_count={len(result.best_assignments)}",
        f"assignment={bitstring(result.best_assignment)}",
    ]
    lines.extend(
        f"argmin.{k}={bitstring(assignment)}" for k, assignment in enumerate(result.best_assignments)
    )
    return lines


def parse_solution(lines: Iterable[str]) -> Tuple[int, List[Tuple[int, ...]]]:
    """
    Read a solution file back.

    Returns:
        (best energy, assignments): every argmin when listed, else the single best
    """
    fields: Dict[str, str] = {}
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise QuboFormatError(f"malformed solution line: {line!r}")
        key, value = line.split('=', 1)
        fields[key.strip()] = value.strip()

    try:
        best_energy = int(fields['energy'])
    except (KeyError, ValueError):
        raise QuboFormatError("solution is missing an integer 'energy'") from None

    try:
        count = int(fields.get('argmin_count', '0') or 0)
    except ValueError:
        raise QuboFormatError(f"malformed argmin_count {fields['argmin_count']!r}") from None
    assignments = [parse_bitstring(fields[f'argmin.{k}']) for k in range(count) if f'argmin.{k}' in fields]
    if not assignments:
        if 'assignment' not in fields:
            raise QuboFormatError("solution has no assignment")
        assignments = [parse_bitstring(fields['assignment'])]
    return best_energy, assignments
