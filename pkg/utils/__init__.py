"""
Utils package for the DLP-to-QUBO toolkit.
Logging setup, formatting helpers and input validators.
"""

from .logger import setup_logger, get_logger
from .helpers import format_bit_grid, format_fraction, format_key_values, format_table, parse_int_list

__all__ = [
    'setup_logger', 'get_logger', 'format_bit_grid', 'format_fraction',
    'format_key_values', 'format_table', 'parse_int_list',
]
