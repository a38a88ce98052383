"""
Helper Utilities Module
Formatting and parsing helpers shared by the CLI and reports.
"""

from fractions import Fraction
from typing import Any, Iterable, List, Mapping, Tuple
import re

import numpy as np


def format_bit_grid(matrix: Any, indent: str = '  ') -> str:
    """
    Render a 0/1 matrix as rows of space-separated bits.

    Args:
        matrix: 2-D array-like of bits
        indent: Prefix for every row

    Returns:
        Multi-line string
    """
    grid = np.asarray(matrix, dtype=np.int64)
    return '\n'.join(indent + ' '.join(str(int(bit)) for bit in row) for row in grid)


def parse_int_list(text: str) -> List[int]:
    """
    Parse '2,3,5' (spaces allowed) into [2, 3, 5].

    Raises:
        ValueError: empty list or non-integer entry
    """
    parts = [part.strip() for part in re.split(r'[,\s]+', text.strip()) if part.strip()]
    if not parts:
        raise ValueError("empty integer list")
    try:
        return [int(part) for part in parts]
    except ValueError:
        raise ValueError(f"not a comma-separated integer list: {text!r}") from None


def format_fraction(value: Fraction, max_digits: int = 30) -> str:
    """
    Exact decimal for terminating fractions (7415/10000 -> '0.7415'),
    'p/q' otherwise.
    """
    value = Fraction(value)
    denominator = value.denominator
    for prime in (2, 5):
        while denominator % prime == 0:
            denominator //= prime
    if denominator != 1:
        return f"{value.numerator}/{value.denominator}"

    sign = '-' if value < 0 else ''
    value = abs(value)
    whole = value.numerator // value.denominator
    remainder = value - whole
    digits = ''
    while remainder and len(digits) < max_digits:
        remainder *= 10
        digit = remainder.numerator // remainder.denominator
        digits += str(digit)
        remainder -= digit
    return f"{sign}{whole}.{digits}" if digits else f"{sign}{whole}"


def format_key_values(pairs: Iterable[Tuple[str, Any]]) -> str:
    """Line-oriented key=value text, booleans lower-cased."""
    lines = []
    for key, value in pairs:
        if isinstance(value, bool):
            value = str(value).lower()
        lines.append(f"{key}={value}")
    return '\n'.join(lines)


def format_table(rows: Iterable[Mapping[str, Any]], columns: List[str]) -> str:
    """Fixed-width text table for terminal output."""
    rows = list(rows)
    cells = [[str(row[col]) for col in columns] for row in rows]
    widths = [max([len(col)] + [len(line[i]) for line in cells]) for i, col in enumerate(columns)]
    header = '  '.join(col.ljust(widths[i]) for i, col in enumerate(columns))
    body = ['  '.join(cell.ljust(widths[i]) for i, cell in enumerate(line)) for line in cells]
    return '\n'.join([header, '  '.join('-' * w for w in widths)] + body)
