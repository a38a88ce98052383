"""
Normal Basis Module
Builds the normal-basis machinery over GF(2^n) generated by a Dickson
polynomial: basis-transition matrices, the multiplication matrix T(0),
the optimality verdict, and normal-basis arithmetic.

Coordinates are little-endian internally (index i is the coefficient of
t^(2^i)); the display order is big-endian, e.g. "[1,0,0]" for t^4.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union
import logging

import numpy as np

from .gf2_poly import Gf2Poly, dickson_poly, is_irreducible, pb_mul_mod

logger = logging.getLogger(__name__)


class FieldConstructionError(ValueError):
    """Raised when no usable normal-basis field can be built for n."""


@dataclass(frozen=True)
class NbElement:
    """Normal-basis coordinates; bits[i] is the coefficient of t^(2^i)."""

    bits: Tuple[int, ...]

    def __post_init__(self):
        if any(bit not in (0, 1) for bit in self.bits):
            raise ValueError(f"normal-basis coordinates must be 0/1, got {self.bits}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> 'NbElement':
        return cls(tuple(int(bit) for bit in bits))

    @classmethod
    def from_display_string(cls, text: str) -> 'NbElement':
        """Parse big-endian display bits such as '110' (= t^4 + t^2 over GF(8))."""
        cleaned = text.strip().strip('[]').replace(',', '').replace(' ', '')
        if not cleaned or any(ch not in '01' for ch in cleaned):
            raise ValueError(f"not a normal-basis bit string: {text!r}")
        return cls(tuple(int(ch) for ch in reversed(cleaned)))

    @property
    def n(self) -> int:
        return len(self.bits)

    def is_zero(self) -> bool:
        return not any(self.bits)

    def is_one(self) -> bool:
        return all(self.bits)

    def to_display_string(self) -> str:
        return ''.join(str(bit) for bit in reversed(self.bits))

    def __str__(self) -> str:
        return '[' + ','.join(str(bit) for bit in reversed(self.bits)) + ']'


def _readonly(matrix: np.ndarray) -> np.ndarray:
    matrix = matrix.astype(np.uint8)
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class FieldParams:
    """
    Immutable field context for GF(2^n) in the normal basis generated by t.

    m_n2p rows are the polynomial coordinates of t^(2^i) mod f; m_p2n is its
    inverse; t0[i][j] is the t-coordinate of t^(2^i) * t^(2^j).
    """

    n: int
    f: Gf2Poly
    m_n2p: np.ndarray
    m_p2n: np.ndarray
    t0: np.ndarray
    optimal: bool
    pairs: Tuple[Tuple[int, int], ...] = field(default=())

    @property
    def group_order(self) -> int:
        return (1 << self.n) - 1

    @property
    def nonzero_count(self) -> int:
        return int(self.t0.sum())

    def column_support(self, j: int) -> List[int]:
        """Row indices i with t0[i][j] = 1."""
        return [i for i in range(self.n) if self.t0[i, j]]

    def zero(self) -> NbElement:
        return NbElement((0,) * self.n)

    def one(self) -> NbElement:
        return NbElement((1,) * self.n)

    def generator(self) -> NbElement:
        return NbElement((1,) + (0,) * (self.n - 1))

    def rotated_matrix(self, l: int) -> np.ndarray:
        """
        T(l): the matrix that yields coordinate l from row/column-rotated
        indices. Computed on demand; only T(0) is stored.
        """
        index = [(i - l) % self.n for i in range(self.n)]
        return self.t0[np.ix_(index, index)]

    def display_m_n2p(self) -> np.ndarray:
        """M(N->P) with rows (t^(2^(n-1)) ... t) and columns (t^(n-1) ... 1)."""
        return self.m_n2p[::-1, ::-1]

    def display_m_p2n(self) -> np.ndarray:
        """M(P->N) in the same big-endian display order."""
        return self.m_p2n[::-1, ::-1]


def _gf2_inverse(matrix: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse over GF(2); raises if singular."""
    n = matrix.shape[0]
    work = np.concatenate([matrix.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        pivots = np.nonzero(work[col:, col])[0]
        if pivots.size == 0:
            raise FieldConstructionError("t is not a normal element (M(N->P) is singular)")
        pivot = col + int(pivots[0])
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        for row in range(n):
            if row != col and work[row, col]:
                work[row] ^= work[col]
    return work[:, n:]


def _multiplicative_order(base: int, modulus: int) -> int:
    value, order = base % modulus, 1
    while value != 1:
        value = (value * base) % modulus
        order += 1
    return order


def type_ii_precheck(n: int) -> bool:
    """
    Number-theoretic gate for a type-II optimal normal basis: 2n+1 prime and
    2 either primitive mod 2n+1, or 2n+1 = 3 mod 4 with 2 of order n.
    """
    p = 2 * n + 1
    if p < 3 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        return False
    order = _multiplicative_order(2, p)
    return order == 2 * n or (p % 4 == 3 and order == n)


def build_field(n: int) -> FieldParams:
    """
    Build the normal-basis field context for GF(2^n) from f = dickson_poly(n).

    Args:
        n: Extension degree (n >= 2)

    Returns:
        FieldParams with transition matrices, T(0) and the optimality flag

    Raises:
        FieldConstructionError: reducible Dickson polynomial or t not normal
    """
    if n < 2:
        raise FieldConstructionError(f"extension degree must be >= 2, got {n}")

    f = dickson_poly(n)
    if not is_irreducible(f):
        raise FieldConstructionError(
            f"no type-II construction via Dickson polynomial for n={n} ({f} is reducible)"
        )

    # Row i: t^(2^i) mod f
    powers = []
    current = Gf2Poly.t() % f
    for _ in range(n):
        powers.append(current)
        current = pb_mul_mod(current, current, f)
    m_n2p = np.array([p.coordinates(n) for p in powers], dtype=np.uint8)
    m_p2n = _gf2_inverse(m_n2p)

    t0 = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i, n):
            product = pb_mul_mod(powers[i], powers[j], f)
            coords = np.array(product.coordinates(n), dtype=np.uint8)
            bit = int((coords @ m_p2n)[0] % 2)
            t0[i, j] = t0[j, i] = bit

    optimal = int(t0.sum()) == 2 * n - 1
    pairs = tuple((i, j) for i in range(n) for j in range(n) if t0[i, j])

    logger.info(
        f"Built GF(2^{n}) with f(t)={f}: T(0) has {int(t0.sum())} nonzeros, "
        f"optimal={optimal}, type-II precheck={type_ii_precheck(n)}"
    )
    if not optimal:
        logger.warning(
            f"Normal basis for n={n} is not optimal; variable counts will exceed 3n^2 estimates"
        )

    return FieldParams(
        n=n,
        f=f,
        m_n2p=_readonly(m_n2p),
        m_p2n=_readonly(m_p2n),
        t0=_readonly(t0),
        optimal=optimal,
        pairs=pairs,
    )


def _check_length(element: NbElement, fp: FieldParams):
    if element.n != fp.n:
        raise ValueError(f"element has {element.n} coordinates, field needs {fp.n}")


def nb_mul(a: NbElement, b: NbElement, fp: FieldParams) -> NbElement:
    """
    Normal-basis product: c_k = sum over T(0) nonzeros (i, j) of
    a[(i+k) mod n] * b[(j+k) mod n], over GF(2).
    """
    _check_length(a, fp)
    _check_length(b, fp)
    n = fp.n
    out = []
    for k in range(n):
        bit = 0
        for i, j in fp.pairs:
            bit ^= a.bits[(i + k) % n] & b.bits[(j + k) % n]
        out.append(bit)
    return NbElement(tuple(out))


def nb_square(a: NbElement) -> NbElement:
    """Squaring is a cyclic rotation: output bit (i+1 mod n) = input bit i."""
    return NbElement(a.bits[-1:] + a.bits[:-1])


def nb_pow(a: NbElement, e: int, fp: FieldParams) -> NbElement:
    """
    a^e by square-and-multiply on nb_square / nb_mul.

    Args:
        a: Base element
        e: Non-negative exponent
        fp: Field context

    Returns:
        The power; e = 0 gives the all-ones element
    """
    _check_length(a, fp)
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    if a.is_zero():
        if e == 0:
            raise ValueError("0^0 is undefined in the field")
        return fp.zero()

    result = fp.one()
    for bit in bin(e)[2:]:
        result = nb_square(result)
        if bit == '1':
            result = nb_mul(result, a, fp)
    return result


ElementLike = Union[NbElement, Gf2Poly]


def convert(element: ElementLike, direction: str, fp: FieldParams) -> ElementLike:
    """
    Change of basis by row-vector multiplication with M(P->N) or M(N->P).

    Args:
        element: Gf2Poly for 'poly->nb', NbElement for 'nb->poly'
        direction: 'poly->nb' or 'nb->poly'
        fp: Field context

    Returns:
        The element in the other basis
    """
    if direction == 'poly->nb':
        if not isinstance(element, Gf2Poly):
            raise TypeError("poly->nb expects a Gf2Poly")
        coords = np.array((element % fp.f).coordinates(fp.n), dtype=np.uint8)
        return NbElement(tuple(int(bit) for bit in (coords @ fp.m_p2n) % 2))

    if direction == 'nb->poly':
        if not isinstance(element, NbElement):
            raise TypeError("nb->poly expects an NbElement")
        _check_length(element, fp)
        coords = np.array(element.bits, dtype=np.uint8)
        return Gf2Poly.from_coeffs([int(bit) for bit in (coords @ fp.m_n2p) % 2])

    raise ValueError(f"unknown conversion direction {direction!r}")


def element_from_poly(p: Gf2Poly, fp: FieldParams) -> NbElement:
    """Normal-basis element of a polynomial-basis value (reduced mod f first)."""
    return convert(p, 'poly->nb', fp)
