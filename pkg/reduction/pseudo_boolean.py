"""
Pseudo-Boolean Module
Exact integer algebra over named binary variables: affine expressions,
multilinear polynomials, range analysis, multiplicity-bit sizing, product
linearization with Rosenberg penalties, and binding simplification.

All coefficients are Python ints; nothing in the symbolic path uses floats.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

import numpy as np

logger = logging.getLogger(__name__)

VarId = int
Monomial = Tuple[VarId, ...]
Namer = Callable[[VarId], str]

# Exact range analysis enumerates at most this many variables
PB_RANGE_ENUMERATION_LIMIT = 20


class ReductionError(ValueError):
    """Raised when an expression violates the reduction's structural rules."""


class InconsistentInstanceError(ReductionError):
    """Raised when simplification derives a contradiction."""


class VarRole(str, Enum):
    EXPONENT = 'exponent'
    REGISTER = 'register'
    PRODUCT = 'product'
    MULTIPLICITY = 'multiplicity'


def default_name(var: VarId) -> str:
    return f"u{var}"


def _format_sum(constant: int, pieces: Sequence[Tuple[str, int]]) -> str:
    parts: List[str] = []
    if constant or not pieces:
        parts.append(str(constant))
    for label, coeff in pieces:
        magnitude = '' if abs(coeff) == 1 else str(abs(coeff))
        if parts:
            parts.append(('-' if coeff < 0 else '+') + magnitude + label)
        else:
            parts.append(('-' if coeff < 0 else '') + magnitude + label)
    return ''.join(parts)


# ---------------------------------------------------------------------------
# Affine expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinExpr:
    """
    constant + sum(coeff * var). `terms` may be given as a mapping or pairs;
    it is normalized to a sorted tuple without zero coefficients.
    """

    constant: int = 0
    terms: Tuple[Tuple[VarId, int], ...] = ()

    def __post_init__(self):
        raw = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        merged: Dict[VarId, int] = {}
        for var, coeff in raw:
            merged[var] = merged.get(var, 0) + int(coeff)
        object.__setattr__(self, 'constant', int(self.constant))
        object.__setattr__(
            self, 'terms', tuple(sorted((v, c) for v, c in merged.items() if c))
        )

    @classmethod
    def const(cls, value: int) -> 'LinExpr':
        return cls(value)

    @classmethod
    def var(cls, var: VarId, coeff: int = 1) -> 'LinExpr':
        return cls(0, ((var, coeff),))

    @property
    def variables(self) -> List[VarId]:
        return [var for var, _ in self.terms]

    def coeff(self, var: VarId) -> int:
        return dict(self.terms).get(var, 0)

    def is_constant(self) -> bool:
        return not self.terms

    def __add__(self, other) -> 'LinExpr':
        other = _as_lin(other)
        return LinExpr(self.constant + other.constant, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> 'LinExpr':
        return LinExpr(-self.constant, tuple((v, -c) for v, c in self.terms))

    def __sub__(self, other) -> 'LinExpr':
        return self + (-_as_lin(other))

    def __rsub__(self, other) -> 'LinExpr':
        return _as_lin(other) - self

    def __mul__(self, factor) -> 'LinExpr':
        if not isinstance(factor, int):
            return NotImplemented
        return LinExpr(self.constant * factor, tuple((v, c * factor) for v, c in self.terms))

    __rmul__ = __mul__

    def range(self) -> Tuple[int, int]:
        """Raw affine bounds over all 0/1 assignments."""
        low = self.constant + sum(c for _, c in self.terms if c < 0)
        high = self.constant + sum(c for _, c in self.terms if c > 0)
        return low, high

    def evaluate(self, assignment) -> int:
        return self.constant + sum(c * int(assignment[v]) for v, c in self.terms)

    def substitute(self, mapping: Mapping[VarId, 'LinExpr']) -> 'LinExpr':
        result = LinExpr(self.constant)
        for var, coeff in self.terms:
            result = result + (_as_lin(mapping[var]) * coeff if var in mapping else LinExpr.var(var, coeff))
        return result

    def literal(self) -> Optional[Tuple[Optional[VarId], int]]:
        """
        Literal view: (None, b) for a constant bit b, (x, 0) for x and
        (x, 1) for 1 - x; None for anything else.
        """
        if not self.terms:
            return (None, self.constant) if self.constant in (0, 1) else None
        if len(self.terms) == 1:
            var, coeff = self.terms[0]
            if coeff == 1 and self.constant == 0:
                return var, 0
            if coeff == -1 and self.constant == 1:
                return var, 1
        return None

    def is_literal(self) -> bool:
        return self.literal() is not None

    def to_pb(self) -> 'PbPoly':
        return PbPoly((((), self.constant),) + tuple(((v,), c) for v, c in self.terms))

    def format(self, namer: Optional[Namer] = None) -> str:
        namer = namer or default_name
        return _format_sum(self.constant, [(namer(v), c) for v, c in self.terms])

    def __str__(self) -> str:
        return self.format()


def _as_lin(value) -> LinExpr:
    if isinstance(value, LinExpr):
        return value
    if isinstance(value, (int, np.integer)):
        return LinExpr(int(value))
    if isinstance(value, PbPoly):
        return value.to_lin()
    raise TypeError(f"cannot use {type(value).__name__} as an affine expression")


def literal_expr(var: Optional[VarId], negated: int) -> LinExpr:
    """Inverse of LinExpr.literal()."""
    if var is None:
        return LinExpr(negated)
    return LinExpr(1, ((var, -1),)) if negated else LinExpr.var(var)


# ---------------------------------------------------------------------------
# Multilinear polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PbPoly:
    """
    Multilinear polynomial: monomial (sorted tuple of distinct VarIds) to
    coefficient. x^2 folds to x on construction; the empty monomial holds
    the constant.
    """

    terms: Tuple[Tuple[Monomial, int], ...] = ()

    def __post_init__(self):
        raw = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        merged: Dict[Monomial, int] = {}
        for monomial, coeff in raw:
            key = tuple(sorted(set(monomial)))
            merged[key] = merged.get(key, 0) + int(coeff)
        ordered = sorted(
            ((m, c) for m, c in merged.items() if c),
            key=lambda item: (len(item[0]), item[0]),
        )
        object.__setattr__(self, 'terms', tuple(ordered))

    @classmethod
    def const(cls, value: int) -> 'PbPoly':
        return cls((((), value),))

    @classmethod
    def var(cls, var: VarId, coeff: int = 1) -> 'PbPoly':
        return cls((((var,), coeff),))

    @property
    def constant_term(self) -> int:
        return dict(self.terms).get((), 0)

    @property
    def degree(self) -> int:
        return max((len(m) for m, _ in self.terms), default=0)

    @property
    def variables(self) -> List[VarId]:
        return sorted({v for m, _ in self.terms for v in m})

    def coefficients(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def is_constant(self) -> bool:
        return self.degree == 0

    def __add__(self, other) -> 'PbPoly':
        other = _as_pb(other)
        return PbPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> 'PbPoly':
        return PbPoly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other) -> 'PbPoly':
        return self + (-_as_pb(other))

    def __rsub__(self, other) -> 'PbPoly':
        return _as_pb(other) - self

    def __mul__(self, other) -> 'PbPoly':
        if isinstance(other, (int, np.integer)):
            return PbPoly(tuple((m, c * int(other)) for m, c in self.terms))
        other = _as_pb(other)
        products: List[Tuple[Monomial, int]] = []
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                products.append((m1 + m2, c1 * c2))
        return PbPoly(tuple(products))

    __rmul__ = __mul__

    def evaluate(self, assignment) -> int:
        total = 0
        for monomial, coeff in self.terms:
            if all(int(assignment[v]) for v in monomial):
                total += coeff
        return total

    def substitute(self, mapping: Mapping[VarId, Union['PbPoly', LinExpr, int]]) -> 'PbPoly':
        if not mapping or not any(v in mapping for v in self.variables):
            return self
        result = PbPoly()
        for monomial, coeff in self.terms:
            term = PbPoly.const(coeff)
            for var in monomial:
                term = term * (_as_pb(mapping[var]) if var in mapping else PbPoly.var(var))
            result = result + term
        return result

    def mod2(self) -> 'PbPoly':
        return PbPoly(tuple((m, c % 2) for m, c in self.terms))

    def require_degree(self, limit: int) -> 'PbPoly':
        if self.degree > limit:
            raise ReductionError(
                f"monomial of degree {self.degree} exceeds {limit}; linearize before squaring"
            )
        return self

    def to_lin(self) -> LinExpr:
        self.require_degree(1)
        return LinExpr(self.constant_term, tuple((m[0], c) for m, c in self.terms if m))

    def format(self, namer: Optional[Namer] = None) -> str:
        namer = namer or default_name
        pieces = [('*'.join(namer(v) for v in m), c) for m, c in self.terms if m]
        return _format_sum(self.constant_term, pieces)

    def __str__(self) -> str:
        return self.format()


def _as_pb(value) -> PbPoly:
    if isinstance(value, PbPoly):
        return value
    if isinstance(value, LinExpr):
        return value.to_pb()
    if isinstance(value, (int, np.integer)):
        return PbPoly.const(int(value))
    raise TypeError(f"cannot use {type(value).__name__} as a pseudo-Boolean polynomial")


# ---------------------------------------------------------------------------
# Variable registry
# ---------------------------------------------------------------------------

@dataclass
class VarInfo:
    """Registry record; `definition` lets a witness recompute the variable."""

    var: VarId
    role: VarRole
    stage: int = -1
    position: int = -1
    factors: Optional[Tuple[VarId, VarId]] = None
    definition: Optional[PbPoly] = None
    parity: bool = False
    bit: int = -1


class VarRegistry:
    """
    Per-transformation variable table. VarIds are dense, allocated in
    creation order and never reused; eliminations map removed variables to
    literal expressions over surviving ones.
    """

    def __init__(self):
        self._vars: List[VarInfo] = []
        self._products: Dict[Tuple[VarId, VarId], VarId] = {}
        self.penalties: Dict[VarId, PbPoly] = {}
        self.eliminations: Dict[VarId, PbPoly] = {}

    def __len__(self) -> int:
        return len(self._vars)

    def __iter__(self):
        return iter(self._vars)

    def new_var(self, role: VarRole, stage: int = -1, position: int = -1, **details) -> VarId:
        var = len(self._vars)
        self._vars.append(VarInfo(var=var, role=role, stage=stage, position=position, **details))
        return var

    def info(self, var: VarId) -> VarInfo:
        try:
            return self._vars[var]
        except IndexError:
            raise ReductionError(f"unknown variable id {var}") from None

    def name(self, var: VarId) -> str:
        return default_name(var)

    def describe(self, var: VarId) -> str:
        info = self.info(var)
        text = f"{self.name(var)} {info.role.value}"
        if info.stage >= 0:
            text += f" stage={info.stage}"
        if info.position >= 0:
            text += f" pos={info.position}"
        if info.factors is not None:
            text += f" factors={self.name(info.factors[0])}*{self.name(info.factors[1])}"
        if info.bit >= 0:
            text += f" bit={info.bit}"
        return text

    def product_of(self, x: VarId, y: VarId) -> Optional[VarId]:
        return self._products.get((min(x, y), max(x, y)))

    def record_product(self, x: VarId, y: VarId, z: VarId):
        self._products[(min(x, y), max(x, y))] = z

    def vars_with_role(self, role: VarRole) -> List[VarId]:
        return [info.var for info in self._vars if info.role == role]

    def is_live(self, var: VarId) -> bool:
        return var not in self.eliminations

    def live_vars(self) -> List[VarId]:
        return [info.var for info in self._vars if info.var not in self.eliminations]

    def eliminate(self, var: VarId, value: PbPoly):
        """
        Record var = value, resolving chains so every stored value refers to
        surviving variables only.
        """
        if var in self.eliminations:
            raise ReductionError(f"{self.name(var)} is already eliminated")
        value = _as_pb(value).substitute(self.eliminations)
        if var in value.variables:
            raise ReductionError(f"cannot eliminate {self.name(var)} in terms of itself")
        self.eliminations = {
            other: expr.substitute({var: value}) for other, expr in self.eliminations.items()
        }
        self.eliminations[var] = value
        logger.debug(f"Eliminated {self.name(var)} = {value.format(self.name)}")


# ---------------------------------------------------------------------------
# Ranges and multiplicity bits
# ---------------------------------------------------------------------------

def _enumerate_values(poly: PbPoly) -> np.ndarray:
    variables = poly.variables
    count = len(variables)
    index = np.arange(1 << count, dtype=np.int64)
    bits = (index[:, None] >> np.arange(count, dtype=np.int64)) & 1
    column = {var: i for i, var in enumerate(variables)}
    values = np.full(1 << count, poly.constant_term, dtype=np.int64)
    for monomial, coeff in poly.terms:
        if monomial:
            values += coeff * np.prod(bits[:, [column[v] for v in monomial]], axis=1)
    return values


def pb_range(poly: Union[PbPoly, LinExpr], limit: int = PB_RANGE_ENUMERATION_LIMIT) -> Tuple[int, int]:
    """
    Exact (min, max) of a polynomial over all 0/1 assignments.

    Products are respected, so u*a + (1-u)*b ranges over [0, 1] rather than
    its raw affine bounds. Beyond `limit` variables the coefficient-sign
    bound is returned instead.
    """
    poly = _as_pb(poly)
    if len(poly.variables) > limit:
        logger.debug(f"pb_range: {len(poly.variables)} variables, using coefficient bounds")
        low = poly.constant_term + sum(c for m, c in poly.terms if m and c < 0)
        high = poly.constant_term + sum(c for m, c in poly.terms if m and c > 0)
        return low, high
    values = _enumerate_values(poly)
    return int(values.min()), int(values.max())


def multiplicity_bits(
    expr: Union[LinExpr, PbPoly],
    reg: VarRegistry,
    owner: Optional[PbPoly] = None,
    bounds: Optional[Tuple[int, int]] = None,
    stage: int = -1,
) -> List[Tuple[VarId, int]]:
    """
    Allocate carry bits so that expr - sum(2^(j+1) * k_j) = 0 is solvable
    exactly when expr takes an even value in its range.

    Args:
        expr: Integer lift of a parity constraint, arranged so min >= -1
        reg: Registry receiving the new variables
        owner: Residual the bits belong to (defaults to expr)
        bounds: Precomputed (min, max) of expr
        stage: Stage tag for the registry

    Returns:
        List of (VarId, coefficient) with coefficients -2, -4, ...
    """
    if bounds is None:
        bounds = expr.range() if isinstance(expr, LinExpr) else pb_range(expr)
    low, high = bounds
    if low < -1:
        raise ReductionError(
            f"constraint not in reduced-sign form: minimum {low} < -1"
        )

    count = (high // 2).bit_length() if high > 0 else 0
    definition = _as_pb(owner if owner is not None else expr)
    bits = []
    for j in range(count):
        kappa = reg.new_var(VarRole.MULTIPLICITY, stage=stage, definition=definition, bit=j)
        bits.append((kappa, -(2 << j)))
    return bits


# ---------------------------------------------------------------------------
# Linearization and squaring
# ---------------------------------------------------------------------------

def rosenberg_penalty(x, y, z) -> PbPoly:
    """xy - 2xz - 2yz + 3z: zero iff z = x*y, at least 1 otherwise."""
    px, py, pz = (
        PbPoly.var(int(v)) if isinstance(v, (int, np.integer)) else _as_pb(v) for v in (x, y, z)
    )
    return px * py - 2 * px * pz - 2 * py * pz + 3 * pz


def linearize(x: VarId, y: VarId, reg: VarRegistry, stage: int = -1) -> Tuple[VarId, PbPoly]:
    """
    Product variable z for x*y with its Rosenberg penalty; repeated
    requests for the same pair return the cached z.
    """
    if x == y:
        raise ReductionError(f"cannot linearize {reg.name(x)}*{reg.name(x)}; it folds to {reg.name(x)}")
    a, b = min(x, y), max(x, y)
    z = reg.product_of(a, b)
    if z is None:
        z = reg.new_var(
            VarRole.PRODUCT,
            stage=stage,
            factors=(a, b),
            definition=PbPoly.var(a) * PbPoly.var(b),
        )
        reg.record_product(a, b, z)
        reg.penalties[z] = rosenberg_penalty(a, b, z)
        logger.debug(f"Linearized {reg.name(a)}*{reg.name(b)} -> {reg.name(z)}")
    return z, reg.penalties[z]


def linearize_poly(poly: PbPoly, reg: VarRegistry, stage: int = -1) -> LinExpr:
    """Replace every quadratic monomial by its product variable."""
    constant = 0
    terms: List[Tuple[VarId, int]] = []
    for monomial, coeff in _as_pb(poly).terms:
        if not monomial:
            constant += coeff
        elif len(monomial) == 1:
            terms.append((monomial[0], coeff))
        elif len(monomial) == 2:
            z, _ = linearize(monomial[0], monomial[1], reg, stage=stage)
            terms.append((z, coeff))
        else:
            raise ReductionError(
                f"monomial of degree {len(monomial)} cannot be linearized by a single product"
            )
    return LinExpr(constant, tuple(terms))


def square_to_pb(expr: Union[LinExpr, PbPoly]) -> PbPoly:
    """e^2 as a multilinear polynomial (x^2 folded to x)."""
    poly = _as_pb(expr).require_degree(1)
    return poly * poly


# ---------------------------------------------------------------------------
# Bindings and simplification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Binding:
    """
    var = expr (exact) or var = expr mod 2 (parity). With var None the
    binding states expr = 0 (or expr even). `bounds` covers the residual.
    """

    var: Optional[VarId]
    expr: PbPoly
    parity: bool = False
    bounds: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, 'expr', _as_pb(self.expr))

    @property
    def residual(self) -> PbPoly:
        if self.var is None:
            return self.expr
        return self.expr - PbPoly.var(self.var)

    def substitute(self, mapping: Mapping[VarId, PbPoly]) -> 'Binding':
        expr = self.expr.substitute(mapping)
        if self.var is not None and self.var in mapping:
            return Binding(None, expr - _as_pb(mapping[self.var]), self.parity, self.bounds)
        return Binding(self.var, expr, self.parity, self.bounds)

    def format(self, namer: Optional[Namer] = None) -> str:
        namer = namer or default_name
        lhs = namer(self.var) if self.var is not None else '0'
        suffix = ' (mod 2)' if self.parity else ''
        return f"{lhs} = {self.expr.format(namer)}{suffix}"


def _modular_literal(rest: LinExpr) -> Optional[PbPoly]:
    constant = rest.constant % 2
    live = [v for v, c in rest.terms if c % 2]
    if not live:
        return PbPoly.const(constant)
    if len(live) == 1:
        return PbPoly.const(1) - PbPoly.var(live[0]) if constant else PbPoly.var(live[0])
    return None


def _solve_literal(check: PbPoly, modular: bool, reg: VarRegistry) -> Optional[Tuple[VarId, PbPoly]]:
    """
    Find a variable the (affine) residual pins to a literal, preferring the
    highest VarId so lower ids survive.
    """
    if check.degree > 1:
        return None
    lin = check.to_lin()

    if len(lin.terms) == 1 and not modular:
        var, coeff = lin.terms[0]
        if lin.constant % coeff or -lin.constant // coeff not in (0, 1):
            raise InconsistentInstanceError(
                f"inconsistent instance: {lin.format(reg.name)} = 0 has no binary solution"
            )
        return var, PbPoly.const(-lin.constant // coeff)

    for var, coeff in reversed(lin.terms):
        if modular:
            if coeff % 2 == 0:
                continue
            rest = LinExpr(lin.constant, tuple((v, c) for v, c in lin.terms if v != var))
            value = _modular_literal(rest)
            if value is not None:
                return var, value
        elif coeff in (1, -1):
            rest = (lin - LinExpr.var(var, coeff)) * (-coeff)
            if rest.is_literal():
                return var, rest.to_pb()
    return None


def simplify(bindings: Sequence[Binding], reg: VarRegistry) -> List[Binding]:
    """
    Reduce a binding system to fixpoint: constant propagation, copy
    propagation, negation aliasing and duplicate-expression merging. Every
    elimination is recorded in `reg.eliminations` for decoding.

    Args:
        bindings: Bindings to reduce
        reg: Registry of the transformation

    Returns:
        Surviving bindings with all eliminations substituted

    Raises:
        InconsistentInstanceError: a binding reduces to a false constant
    """
    current = list(bindings)
    changed = True
    passes = 0

    while changed:
        changed = False
        passes += 1
        reduced: List[Binding] = []
        seen_residuals = set()
        by_expr: Dict[Tuple[bool, PbPoly], VarId] = {}

        for binding in current:
            binding = binding.substitute(reg.eliminations)
            check = binding.residual.mod2() if binding.parity else binding.residual

            if check.is_constant():
                if check.constant_term != 0:
                    raise InconsistentInstanceError(
                        f"inconsistent instance: {binding.format(reg.name)}"
                    )
                continue

            solved = _solve_literal(check, binding.parity, reg)
            if solved is not None:
                reg.eliminate(*solved)
                changed = True
                continue

            if binding.var is not None:
                key = (binding.parity, binding.expr)
                other = by_expr.get(key)
                if other is not None and other != binding.var:
                    keep, drop = min(other, binding.var), max(other, binding.var)
                    reg.eliminate(drop, PbPoly.var(keep))
                    by_expr[key] = keep
                    changed = True
                    if drop == binding.var:
                        continue
                else:
                    by_expr[key] = binding.var

            residual_key = (binding.parity, binding.residual)
            if residual_key in seen_residuals:
                continue
            seen_residuals.add(residual_key)
            reduced.append(binding)

        current = reduced

    logger.debug(
        f"simplify: {len(bindings)} bindings -> {len(current)} after {passes} passes, "
        f"{len(reg.eliminations)} eliminations"
    )
    return current


def dump_system(
    reg: VarRegistry,
    bindings: Iterable[Binding] = (),
    squares: Iterable[LinExpr] = (),
    penalties: Iterable[Tuple[PbPoly, PbPoly, PbPoly]] = (),
) -> str:
    """
    Text dump, one binding or term per line: "u6 = 1-u1+u3",
    "F1=(1-u0-u4)^2", "Pen1=Pen(u1,u4,u10)".
    """
    lines = [binding.format(reg.name) for binding in bindings]
    for index, square in enumerate(squares, start=1):
        lines.append(f"F{index}=({_as_lin(square).format(reg.name)})^2")
    for index, triple in enumerate(penalties, start=1):
        args = ','.join(_as_pb(part).format(reg.name) for part in triple)
        lines.append(f"Pen{index}=Pen({args})")
    return '\n'.join(lines)
