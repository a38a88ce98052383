"""
Command-line package: invocation model and command dispatch.
"""

from .run_config import Command, Method, RunConfig, StatsAction
from .commands import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, run

__all__ = [
    'Command', 'Method', 'RunConfig', 'StatsAction', 'run',
    'EXIT_OK', 'EXIT_VERIFICATION_FAILED', 'EXIT_INPUT_ERROR',
]
