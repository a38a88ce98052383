"""
Field package for the DLP-to-QUBO toolkit.
GF(2) polynomial arithmetic and the normal-basis engine for GF(2^n).
"""

from .gf2_poly import (
    Gf2Poly,
    PolynomialError,
    dickson_poly,
    is_irreducible,
    pb_inverse,
    pb_mul_mod,
    pb_pow_mod,
    poly_arith,
    poly_gcd,
)
from .normal_basis import (
    FieldConstructionError,
    FieldParams,
    NbElement,
    build_field,
    convert,
    element_from_poly,
    nb_mul,
    nb_pow,
    nb_square,
    type_ii_precheck,
)

__all__ = [
    'Gf2Poly', 'PolynomialError', 'dickson_poly', 'is_irreducible', 'pb_inverse',
    'pb_mul_mod', 'pb_pow_mod', 'poly_arith', 'poly_gcd',
    'FieldConstructionError', 'FieldParams', 'NbElement', 'build_field', 'convert',
    'element_from_poly', 'nb_mul', 'nb_pow', 'nb_square', 'type_ii_precheck',
]
