"""
GF(2) Polynomial Module
Exact polynomial arithmetic over GF(2), Dickson polynomial generation,
irreducibility testing and polynomial-basis arithmetic modulo f(t).

Polynomials are packed into a non-negative Python int, bit i holding the
coefficient of t^i, so two equal polynomials always compare equal.
"""

from dataclasses import dataclass
from typing import List, Sequence
import logging
import re

logger = logging.getLogger(__name__)


class PolynomialError(ValueError):
    """Raised for undefined polynomial operations or malformed input."""


_TERM_PATTERN = re.compile(r'^(?:(?P<const>[01])|(?P<var>[tx])(?:\^(?P<exp>\d+))?)$')


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2); `mask` bit i is the coefficient of t^i."""

    mask: int = 0

    def __post_init__(self):
        if self.mask < 0:
            raise PolynomialError(f"coefficient mask must be non-negative, got {self.mask}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> 'Gf2Poly':
        return cls(0)

    @classmethod
    def one(cls) -> 'Gf2Poly':
        return cls(1)

    @classmethod
    def t(cls) -> 'Gf2Poly':
        return cls(2)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> 'Gf2Poly':
        """Build from a little-endian coefficient sequence (index i = t^i)."""
        mask = 0
        for i, bit in enumerate(coeffs):
            if bit & 1:
                mask |= 1 << i
        return cls(mask)

    @classmethod
    def from_hex(cls, text: str) -> 'Gf2Poly':
        """Parse a hexadecimal coefficient mask such as '0xD' (t^3+t^2+1)."""
        cleaned = text.strip().lower()
        if cleaned.startswith('0x'):
            cleaned = cleaned[2:]
        if not cleaned or not re.fullmatch(r'[0-9a-f]+', cleaned):
            raise PolynomialError(f"not a hexadecimal coefficient mask: {text!r}")
        return cls(int(cleaned, 16))

    @classmethod
    def parse(cls, text: str) -> 'Gf2Poly':
        """
        Parse either a human-readable sum ("t^3+t^2+1") or a hex mask ("0xD").

        Args:
            text: Polynomial text

        Returns:
            Parsed polynomial
        """
        cleaned = text.replace(' ', '')
        if not cleaned:
            raise PolynomialError("empty polynomial text")
        if cleaned.lower().startswith('0x'):
            return cls.from_hex(cleaned)

        mask = 0
        for term in cleaned.split('+'):
            match = _TERM_PATTERN.match(term)
            if match is None:
                raise PolynomialError(f"cannot parse term {term!r} in {text!r}")
            if match.group('const') is not None:
                mask ^= int(match.group('const'))
            else:
                exponent = int(match.group('exp') or 1)
                mask ^= 1 << exponent
        return cls(mask)

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial (-1 for the zero polynomial)."""
        return self.mask.bit_length() - 1

    def is_zero(self) -> bool:
        return self.mask == 0

    def coefficient(self, i: int) -> int:
        return (self.mask >> i) & 1

    def coordinates(self, n: int) -> List[int]:
        """Coefficient vector of fixed length n (polynomial-basis coordinates)."""
        if self.degree >= n:
            raise PolynomialError(f"degree {self.degree} does not fit {n} coordinates")
        return [(self.mask >> i) & 1 for i in range(n)]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: 'Gf2Poly') -> 'Gf2Poly':
        return Gf2Poly(self.mask ^ other.mask)

    __sub__ = __add__

    def __mul__(self, other: 'Gf2Poly') -> 'Gf2Poly':
        a, b = self.mask, other.mask
        if a.bit_length() < b.bit_length():
            a, b = b, a
        product = 0
        while b:
            if b & 1:
                product ^= a
            a <<= 1
            b >>= 1
        return Gf2Poly(product)

    def __divmod__(self, other: 'Gf2Poly') -> tuple:
        if other.is_zero():
            raise PolynomialError("division by the zero polynomial")
        quotient = 0
        remainder = self.mask
        divisor_degree = other.degree
        while remainder.bit_length() - 1 >= divisor_degree:
            shift = remainder.bit_length() - 1 - divisor_degree
            quotient |= 1 << shift
            remainder ^= other.mask << shift
        return Gf2Poly(quotient), Gf2Poly(remainder)

    def __floordiv__(self, other: 'Gf2Poly') -> 'Gf2Poly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'Gf2Poly') -> 'Gf2Poly':
        return divmod(self, other)[1]

    # -- display ------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return '0'
        terms = []
        for i in range(self.degree, -1, -1):
            if not self.coefficient(i):
                continue
            if i == 0:
                terms.append('1')
            elif i == 1:
                terms.append('t')
            else:
                terms.append(f't^{i}')
        return '+'.join(terms)

    def to_hex(self) -> str:
        return hex(self.mask)


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Greatest common divisor (monic by construction over GF(2))."""
    while not b.is_zero():
        a, b = b, a % b
    return a


def poly_arith(a: Gf2Poly, b: Gf2Poly, op: str) -> Gf2Poly:
    """
    Dispatch a binary polynomial operation.

    Args:
        a: Left operand
        b: Right operand
        op: One of 'add', 'mul', 'mod', 'gcd'

    Returns:
        Result in canonical form
    """
    if op == 'add':
        return a + b
    if op == 'mul':
        return a * b
    if op == 'mod':
        return a % b
    if op == 'gcd':
        return poly_gcd(a, b)
    raise PolynomialError(f"unknown polynomial operation {op!r}")


def dickson_poly(n: int) -> Gf2Poly:
    """
    Dickson-type recursion f_0 = 1, f_1 = t+1, f_n = t*f_{n-1} + f_{n-2}.

    Args:
        n: Index (n >= 0)

    Returns:
        f_n, of degree n
    """
    if n < 0:
        raise PolynomialError(f"Dickson index must be non-negative, got {n}")
    previous, current = Gf2Poly.one(), Gf2Poly(0b11)
    if n == 0:
        return previous
    for _ in range(n - 1):
        previous, current = current, Gf2Poly.t() * current + previous
    return current


def _prime_factors(n: int) -> List[int]:
    factors = []
    candidate = 2
    while candidate * candidate <= n:
        if n % candidate == 0:
            factors.append(candidate)
            while n % candidate == 0:
                n //= candidate
        candidate += 1
    if n > 1:
        factors.append(n)
    return factors


def _frobenius_power(k: int, f: Gf2Poly) -> Gf2Poly:
    """t^(2^k) mod f by repeated squaring."""
    value = Gf2Poly.t() % f
    for _ in range(k):
        value = (value * value) % f
    return value


def is_irreducible(p: Gf2Poly) -> bool:
    """
    Rabin's deterministic irreducibility test over GF(2).

    p of degree n is irreducible iff t^(2^n) = t mod p and
    gcd(t^(2^(n/q)) - t, p) = 1 for every prime q dividing n.
    """
    n = p.degree
    if n < 1:
        raise PolynomialError(f"irreducibility is undefined for constant polynomial {p}")

    t = Gf2Poly.t() % p
    if _frobenius_power(n, p) != t:
        return False

    for q in _prime_factors(n):
        probe = _frobenius_power(n // q, p) + t
        if poly_gcd(p, probe).degree > 0:
            return False

    return True


def pb_pow_mod(base: Gf2Poly, e: int, f: Gf2Poly) -> Gf2Poly:
    """
    base^e mod f by left-to-right square-and-multiply.

    Args:
        base: Polynomial-basis element
        e: Non-negative exponent
        f: Field polynomial

    Returns:
        Reduced power (1 for e = 0)
    """
    if e < 0:
        raise PolynomialError(f"negative exponent {e}")
    result = Gf2Poly.one() % f
    reduced = base % f
    for bit in bin(e)[2:]:
        result = (result * result) % f
        if bit == '1':
            result = (result * reduced) % f
    return result


def pb_mul_mod(a: Gf2Poly, b: Gf2Poly, f: Gf2Poly) -> Gf2Poly:
    """Product of two polynomial-basis elements reduced mod f."""
    return (a * b) % f


def pb_inverse(a: Gf2Poly, f: Gf2Poly) -> Gf2Poly:
    """Multiplicative inverse of a mod f by the extended Euclidean algorithm."""
    if (a % f).is_zero():
        raise PolynomialError("zero has no multiplicative inverse")
    r0, r1 = f, a % f
    s0, s1 = Gf2Poly.zero(), Gf2Poly.one()
    while not r1.is_zero():
        quotient, remainder = divmod(r0, r1)
        r0, r1 = r1, remainder
        s0, s1 = s1, s0 + quotient * s1
    if r0 != Gf2Poly.one():
        raise PolynomialError(f"{a} is not invertible modulo {f}")
    return s0 % f

