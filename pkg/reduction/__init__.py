"""
Reduction package for the DLP-to-QUBO toolkit.
Pseudo-Boolean algebra and the discrete-log to QUBO transformation.
"""

from .pseudo_boolean import (
    Binding,
    InconsistentInstanceError,
    LinExpr,
    PbPoly,
    ReductionError,
    VarRegistry,
    VarRole,
    linearize,
    multiplicity_bits,
    rosenberg_penalty,
    simplify,
    square_to_pb,
)

__all__ = [
    'Binding', 'InconsistentInstanceError', 'LinExpr', 'PbPoly', 'ReductionError',
    'VarRegistry', 'VarRole', 'linearize', 'multiplicity_bits', 'rosenberg_penalty',
    'simplify', 'square_to_pb',
]
