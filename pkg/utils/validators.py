"""
Input Validator Module
Validates command-line element specifications and extension degrees.
"""

import re
from typing import Optional, Tuple
import logging

from field.gf2_poly import Gf2Poly, PolynomialError
from field.normal_basis import FieldParams, NbElement, element_from_poly

logger = logging.getLogger(__name__)

_HEX_PATTERN = re.compile(r'^(0x)?[0-9a-fA-F]+$')

# Largest extension degree the CLI accepts
MAX_DEGREE = 64


class ElementValidator:
    """
    Validates and parses field elements given as normal-basis bit strings
    (big-endian display order) or polynomial-basis hexadecimal masks.
    """

    @staticmethod
    def validate_degree(n: int) -> Tuple[bool, str]:
        if n < 2:
            return False, f"Extension degree must be at least 2, got {n}"
        if n > MAX_DEGREE:
            return False, f"Extension degree {n} exceeds the supported maximum {MAX_DEGREE}"
        return True, ""

    @staticmethod
    def validate_nb_bits(text: str, n: int) -> Tuple[bool, str]:
        """
        Check a normal-basis bit string such as '110'.

        Returns:
            Tuple of (is_valid, error_message)
        """
        cleaned = (text or '').strip().strip('[]').replace(',', '').replace(' ', '')
        if not cleaned:
            return False, "Empty normal-basis bit string"
        if any(ch not in '01' for ch in cleaned):
            return False, f"Normal-basis bits must be 0/1: {text!r}"
        if len(cleaned) != n:
            return False, f"Normal-basis element needs {n} bits, got {len(cleaned)}"
        if '1' not in cleaned:
            return False, "Target element must be nonzero"
        return True, ""

    @staticmethod
    def validate_poly_hex(text: str, n: int) -> Tuple[bool, str]:
        """
        Check a polynomial-basis hex mask such as '0x3' (t+1).

        Returns:
            Tuple of (is_valid, error_message)
        """
        cleaned = (text or '').strip()
        if not _HEX_PATTERN.match(cleaned):
            return False, f"Polynomial-basis element must be hexadecimal: {text!r}"
        value = int(cleaned, 16)
        if value == 0:
            return False, "Target element must be nonzero"
        if value.bit_length() > n:
            return False, f"Polynomial 0x{value:x} has degree >= {n}"
        return True, ""

    @staticmethod
    def parse_element(
        fp: FieldParams,
        nb_bits: Optional[str] = None,
        poly_hex: Optional[str] = None,
    ) -> NbElement:
        """
        Parse exactly one element specification into the normal basis.

        Raises:
            ValueError: both or neither given, or the text is invalid
        """
        if (nb_bits is None) == (poly_hex is None):
            raise ValueError("Give the element either as normal-basis bits or as polynomial hex")

        if nb_bits is not None:
            is_valid, msg = ElementValidator.validate_nb_bits(nb_bits, fp.n)
            if not is_valid:
                raise ValueError(msg)
            return NbElement.from_display_string(nb_bits)

        is_valid, msg = ElementValidator.validate_poly_hex(poly_hex, fp.n)
        if not is_valid:
            raise ValueError(msg)
        try:
            element = element_from_poly(Gf2Poly.from_hex(poly_hex), fp)
        except PolynomialError as e:
            raise ValueError(str(e)) from e
        logger.debug(f"Parsed polynomial element {poly_hex} as normal-basis {element}")
        return element
