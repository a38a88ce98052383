"""
Configuration package for the DLP-to-QUBO toolkit.
Centralizes environment settings and solver defaults.
"""

from .settings import Settings, settings
from .solver_config import SolverConfig

__all__ = ['Settings', 'settings', 'SolverConfig']
