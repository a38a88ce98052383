"""
DLP Transform Module
Reduces a discrete-logarithm instance t^y = h over GF(2^n), written in the
normal basis generated by t, to a QUBO whose zero-energy assignments
decode to exactly the valid exponents y in [0, 2^n - 1].

The exponent is split into bits u_0..u_{n-1}; stage l multiplies the
running register by t^(2^l) when u_l = 1. Register entries are literals
(0, 1, x or 1-x) or fresh register bits; products are linearized with
Rosenberg penalties and parity constraints get multiplicity bits.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple
import logging

import numpy as np

from field.normal_basis import FieldParams, NbElement
from solver.qubo_solver import Qubo
from .pseudo_boolean import (
    Binding,
    InconsistentInstanceError,
    LinExpr,
    PbPoly,
    ReductionError,
    VarId,
    VarRegistry,
    VarRole,
    dump_system,
    linearize_poly,
    literal_expr,
    multiplicity_bits,
    pb_range,
    simplify,
    square_to_pb,
)

logger = logging.getLogger(__name__)

METADATA_FORMAT = 'dlpq-meta-1'


class DecodeError(ValueError):
    """Raised when an assignment cannot be decoded to an exponent."""


@dataclass(frozen=True, eq=False)
class DlpInstance:
    """Find y with t^y = h; the generator is always t."""

    fp: FieldParams
    h: NbElement

    def __post_init__(self):
        if self.h.n != self.fp.n:
            raise ReductionError(f"target has {self.h.n} coordinates, field needs {self.fp.n}")
        if self.h.is_zero():
            raise ReductionError("target h must be nonzero")

    @property
    def generator(self) -> NbElement:
        return self.fp.generator()

    @property
    def group_order(self) -> int:
        return self.fp.group_order


@dataclass
class TransformContext:
    """Mutable state of one transformation; never shared between instances."""

    fp: FieldParams
    reg: VarRegistry = field(default_factory=VarRegistry)
    exponent_vars: List[VarId] = field(default_factory=list)


@dataclass
class TransformStats:
    logical_variable_count: int
    constraint_count: int
    penalty_count: int
    multiplicity_count: int
    eliminated_count: int
    raw_binding_count: int

    def as_dict(self) -> Dict[str, int]:
        return {
            'logical_variable_count': self.logical_variable_count,
            'constraint_count': self.constraint_count,
            'penalty_count': self.penalty_count,
            'multiplicity_count': self.multiplicity_count,
            'eliminated_count': self.eliminated_count,
            'raw_binding_count': self.raw_binding_count,
        }


@dataclass(frozen=True)
class DecodeMap:
    """
    How to read each exponent bit from a QUBO assignment: ('var', index),
    ('not', index) for 1 - x, or ('const', bit).
    """

    num_vars: int
    entries: Tuple[Tuple[str, int], ...]

    def decode(self, assignment) -> int:
        bits = np.asarray(assignment, dtype=np.int64).ravel()
        if bits.size != self.num_vars:
            raise DecodeError(
                f"assignment has {bits.size} values, QUBO has {self.num_vars} variables"
            )
        if bits.size and not np.isin(bits, (0, 1)).all():
            raise DecodeError("assignment values must be 0/1")

        y = 0
        for i, (kind, value) in enumerate(self.entries):
            if kind == 'var':
                bit = int(bits[value])
            elif kind == 'not':
                bit = 1 - int(bits[value])
            elif kind == 'const':
                bit = value
            else:
                raise DecodeError(f"unknown exponent mapping {kind!r}")
            y |= bit << i
        return y

    def to_lines(self) -> List[str]:
        lines = []
        for i, (kind, value) in enumerate(self.entries):
            lines.append(f"exponent.{i}={value}" if kind == 'var' else f"exponent.{i}={kind}:{value}")
        return lines

    @classmethod
    def from_fields(cls, fields: Dict[str, str]) -> 'DecodeMap':
        try:
            num_vars = int(fields['num_vars'])
            n = int(fields['n'])
            entries = []
            for i in range(n):
                raw = fields[f'exponent.{i}']
                if ':' in raw:
                    kind, value = raw.split(':', 1)
                    entries.append((kind, int(value)))
                else:
                    entries.append(('var', int(raw)))
        except (KeyError, ValueError) as e:
            raise DecodeError(f"malformed decode metadata: {str(e)}") from e

        for kind, value in entries:
            if kind not in ('var', 'not', 'const'):
                raise DecodeError(f"unknown exponent mapping {kind!r}")
            if kind == 'const' and value not in (0, 1):
                raise DecodeError(f"constant exponent bit must be 0/1, got {value}")
            if kind != 'const' and not 0 <= value < num_vars:
                raise DecodeError(f"exponent bit refers to index {value} outside the QUBO")
        return cls(num_vars, tuple(entries))


@dataclass
class TransformResult:
    qubo: Qubo
    registry: VarRegistry
    exponent_vars: List[VarId]
    stats: TransformStats
    instance: DlpInstance
    qubo_vars: List[VarId]
    bindings: List[Binding]
    squares: List[LinExpr]
    penalty_triples: List[Tuple[PbPoly, PbPoly, PbPoly]]
    registers: List[List[LinExpr]]

    def index_of(self, var: VarId) -> int:
        try:
            return self.qubo_vars.index(var)
        except ValueError:
            raise DecodeError(f"{self.registry.name(var)} is not a QUBO variable") from None

    def decode_map(self) -> DecodeMap:
        index = {var: i for i, var in enumerate(self.qubo_vars)}
        entries = []
        for var in self.exponent_vars:
            if var in index:
                entries.append(('var', index[var]))
                continue
            view = self.registry.eliminations[var].to_lin().literal()
            if view is None:
                raise DecodeError(f"exponent bit {self.registry.name(var)} has no literal value")
            source, negated = view
            if source is None:
                entries.append(('const', negated))
            else:
                entries.append(('not' if negated else 'var', index[source]))
        return DecodeMap(self.qubo.num_vars, tuple(entries))

    def dump(self) -> str:
        return dump_system(self.registry, self.bindings, self.squares, self.penalty_triples)


# ---------------------------------------------------------------------------
# Pipeline stages
# ---------------------------------------------------------------------------

def decompose_exponent(n: int, reg: VarRegistry) -> List[VarId]:
    """Allocate u_0..u_{n-1} with y = sum(2^i * u_i)."""
    if n < 2:
        raise ReductionError(f"extension degree must be >= 2, got {n}")
    return [reg.new_var(VarRole.EXPONENT, position=i) for i in range(n)]


def initial_register(u0: VarId, n: int) -> List[LinExpr]:
    """t^(u_0): position 0 is 1, every other position is 1 - u_0."""
    return [LinExpr.const(1)] + [literal_expr(u0, 1) for _ in range(n - 1)]


def _check_register(register: Sequence[LinExpr], n: int):
    if len(register) != n:
        raise ReductionError(f"register has {len(register)} entries, expected {n}")


def _xor_literals(literals: Iterable[LinExpr]) -> Tuple[int, Tuple[VarId, ...]]:
    """GF(2) sum of literals as (constant bit, variables with odd count)."""
    bit = 0
    odd = set()
    for expr in literals:
        view = expr.literal()
        if view is None:
            raise ReductionError(f"register entry {expr} is not a literal")
        var, negated = view
        bit ^= negated
        if var is not None:
            odd ^= {var}
    return bit, tuple(sorted(odd))


def _stage_operand(
    register: Sequence[LinExpr], l: int, k: int, fp: FieldParams
) -> Tuple[int, Tuple[VarId, ...]]:
    # Bit k of A * t^(2^l) sums a_{(i+k) mod n} over T(0) column (l-k) mod n
    support = fp.column_support((l - k) % fp.n)
    return _xor_literals(register[(i + k) % fp.n] for i in support)


def _xor_operands(bit: int, odd: Tuple[VarId, ...]) -> List[LinExpr]:
    return [literal_expr(odd[0], bit)] + [LinExpr.var(v) for v in odd[1:]]


def _select(u: VarId, chosen: Iterable[LinExpr], kept: LinExpr) -> PbPoly:
    """u * sum(chosen) + (1 - u) * kept."""
    pu = PbPoly.var(u)
    total = PbPoly()
    for expr in chosen:
        total = total + pu * expr.to_pb()
    return total + kept.to_pb() - pu * kept.to_pb()


def stage_constraints(
    prev: Sequence[LinExpr], u_l: VarId, l: int, ctx: TransformContext
) -> Tuple[List[LinExpr], List[Binding], List[PbPoly]]:
    """
    One conditional multiplication by t^(2^l).

    Output bit k is u_l * X + (1 - u_l) * a_k, X being the XOR of the
    register literals selected by T(0). A literal X gives an exact 0/1
    selector: propagated when it is itself a literal, else bound to a fresh
    register bit. An XOR of several variables gives a parity binding.

    Args:
        prev: Register before the stage (literals)
        u_l: Exponent bit of this stage
        l: Stage index (1..n-2)
        ctx: Transformation context

    Returns:
        (next register, new bindings, new Rosenberg penalties)
    """
    fp, reg = ctx.fp, ctx.reg
    _check_register(prev, fp.n)
    known_products = set(reg.penalties)
    next_register: List[LinExpr] = []
    bindings: List[Binding] = []

    for k in range(fp.n):
        bit, odd = _stage_operand(prev, l, k, fp)
        kept = prev[k]

        if len(odd) <= 1:
            selector = _select(u_l, [literal_expr(odd[0] if odd else None, bit)], kept)
            if selector.degree <= 1 and selector.to_lin().is_literal():
                next_register.append(selector.to_lin())
                continue
            lin = linearize_poly(selector, reg, stage=l)
            c = reg.new_var(VarRole.REGISTER, stage=l, position=k, definition=lin.to_pb())
            bindings.append(Binding(c, lin.to_pb()))
        else:
            parity_sum = _select(u_l, _xor_operands(bit, odd), kept)
            low, high = pb_range(parity_sum)
            lin = linearize_poly(parity_sum, reg, stage=l)
            c = reg.new_var(
                VarRole.REGISTER, stage=l, position=k, definition=lin.to_pb(), parity=True
            )
            bindings.append(Binding(c, lin.to_pb(), parity=True, bounds=(low - 1, high)))

        next_register.append(LinExpr.var(c))

    penalties = [p for z, p in reg.penalties.items() if z not in known_products]
    logger.debug(
        f"Stage {l}: {len(bindings)} bindings, {len(penalties)} new products, "
        f"register {[str(e) for e in next_register]}"
    )
    return next_register, bindings, penalties


def final_constraints(last: Sequence[LinExpr], h: NbElement, ctx: TransformContext) -> List[Binding]:
    """
    Last multiplication (by t^(2^(n-1)) under u_{n-1}) with every output bit
    equated to the target bit h_k.

    An XOR of two literals needs no carry: with x, y the operands,
    h_k = 0 becomes u*x - u*y + (1-u)*a_k = 0 and h_k = 1 becomes
    1 - u*x - u*y - (1-u)*a_k = 0.
    """
    fp, reg = ctx.fp, ctx.reg
    _check_register(last, fp.n)
    if h.n != fp.n:
        raise ReductionError(f"target has {h.n} coordinates, field needs {fp.n}")
    u = ctx.exponent_vars[-1]
    l = fp.n - 1
    pu = PbPoly.var(u)
    bindings: List[Binding] = []

    for k in range(fp.n):
        bit, odd = _stage_operand(last, l, k, fp)
        kept = last[k]
        target = h.bits[k]

        if len(odd) <= 1:
            selector = _select(u, [literal_expr(odd[0] if odd else None, bit)], kept)
            lin = linearize_poly(selector, reg, stage=l)
            bindings.append(Binding(None, lin.to_pb() - target))
        elif len(odd) == 2:
            first, second = (expr.to_pb() for expr in _xor_operands(bit, odd))
            kept_part = kept.to_pb() - pu * kept.to_pb()
            if target == 0:
                expr = pu * first - pu * second + kept_part
            else:
                expr = 1 - pu * first - pu * second - kept_part
            lin = linearize_poly(expr, reg, stage=l)
            bindings.append(Binding(None, lin.to_pb(), bounds=pb_range(expr)))
        else:
            parity_sum = _select(u, _xor_operands(bit, odd), kept)
            low, high = pb_range(parity_sum)
            lin = linearize_poly(parity_sum, reg, stage=l)
            bindings.append(
                Binding(None, lin.to_pb() - target, parity=True, bounds=(low - target, high - target))
            )

    return bindings


def _substituted_penalties(reg: VarRegistry) -> List[Tuple[Tuple[PbPoly, PbPoly, PbPoly], PbPoly]]:
    seen = set()
    kept = []
    for z in sorted(reg.penalties):
        x, y = reg.info(z).factors
        triple = tuple(PbPoly.var(v).substitute(reg.eliminations) for v in (x, y, z))
        penalty = reg.penalties[z].substitute(reg.eliminations)
        if penalty.is_constant():
            if penalty.constant_term != 0:
                raise InconsistentInstanceError(
                    f"inconsistent instance: product {reg.name(z)} contradicts its factors"
                )
            continue
        if penalty in seen:
            continue
        seen.add(penalty)
        kept.append((triple, penalty))
    return kept


def transform(inst: DlpInstance) -> TransformResult:
    """
    Build the QUBO for t^y = h.

    Runs decompose -> initial register -> stages 1..n-2 -> final
    constraints -> simplify, then squares every surviving binding (parity
    bindings with their multiplicity bits) and adds the Rosenberg penalties.
    Every term carries weight 1.

    Args:
        inst: DLP instance

    Returns:
        TransformResult with the QUBO, registry and decode information
    """
    fp = inst.fp
    n = fp.n
    if not fp.optimal:
        logger.warning(f"GF(2^{n}) basis is not optimal; expect more variables than 3n^2")

    ctx = TransformContext(fp)
    reg = ctx.reg
    ctx.exponent_vars = decompose_exponent(n, reg)

    register = initial_register(ctx.exponent_vars[0], n)
    registers = [register]
    bindings: List[Binding] = []
    for l in range(1, n - 1):
        register, stage_bindings, _ = stage_constraints(register, ctx.exponent_vars[l], l, ctx)
        registers.append(register)
        bindings.extend(stage_bindings)
    bindings.extend(final_constraints(register, inst.h, ctx))

    reduced = simplify(bindings, reg)

    objective = PbPoly()
    squares: List[LinExpr] = []
    multiplicity_count = 0
    for binding in reduced:
        residual = binding.residual.to_lin()
        if binding.parity:
            bits = multiplicity_bits(
                residual, reg, owner=binding.residual, bounds=binding.bounds, stage=n - 1
            )
            multiplicity_count += len(bits)
            residual = residual + LinExpr(0, tuple(bits))
        squares.append(residual)
        objective = objective + square_to_pb(residual)

    penalties = _substituted_penalties(reg)
    for _, penalty in penalties:
        objective = objective + penalty

    qubo_vars = reg.live_vars()
    used = set(objective.variables)
    idle = [v for v in qubo_vars if v not in used and reg.info(v).role != VarRole.EXPONENT]
    if idle:
        logger.warning(f"Unconstrained auxiliary variables in QUBO: {[reg.name(v) for v in idle]}")

    qubo = Qubo.from_pb(objective, qubo_vars)
    stats = TransformStats(
        logical_variable_count=qubo.num_vars,
        constraint_count=len(squares),
        penalty_count=len(penalties),
        multiplicity_count=multiplicity_count,
        eliminated_count=len(reg.eliminations),
        raw_binding_count=len(bindings),
    )
    logger.info(
        f"Transformed GF(2^{n}) instance h={inst.h}: {stats.logical_variable_count} logical "
        f"variables, {stats.constraint_count} squared constraints, {stats.penalty_count} penalties "
        f"(estimate 3n^2={variable_count_estimate(n, 'optimized')})"
    )

    return TransformResult(
        qubo=qubo,
        registry=reg,
        exponent_vars=list(ctx.exponent_vars),
        stats=stats,
        instance=inst,
        qubo_vars=qubo_vars,
        bindings=reduced,
        squares=squares,
        penalty_triples=[triple for triple, _ in penalties],
        registers=registers,
    )


def variable_count_estimate(n: int, mode: str = 'optimized') -> int:
    """Asymptotic estimates: 4n^2 for the naive reduction, 3n^2 optimized."""
    if n < 2:
        raise ValueError(f"extension degree must be >= 2, got {n}")
    if mode == 'naive':
        return 4 * n * n
    if mode == 'optimized':
        return 3 * n * n
    raise ValueError(f"unknown estimate mode {mode!r}")


def decode_solution(assignment, result: TransformResult) -> int:
    """
    Exponent y = sum(2^i * u_i) from a QUBO assignment (indexed like the
    QUBO); eliminated exponent bits are read through their aliases.
    """
    return result.decode_map().decode(assignment)


# ---------------------------------------------------------------------------
# Witnesses and metadata
# ---------------------------------------------------------------------------

def witness_values(registry: VarRegistry, y: int) -> Dict[VarId, int]:
    """Value of every registry variable implied by exponent y."""
    values: Dict[VarId, int] = {}
    for info in registry:
        if info.role == VarRole.EXPONENT:
            values[info.var] = (y >> info.position) & 1
        elif info.role == VarRole.MULTIPLICITY:
            carry = max(info.definition.evaluate(values), 0) // 2
            values[info.var] = (carry >> info.bit) & 1
        else:
            value = info.definition.evaluate(values)
            values[info.var] = value % 2 if info.parity else value
    return values


def witness_assignment(result: TransformResult, y: int) -> np.ndarray:
    """
    Complete QUBO assignment for exponent y; zero energy iff t^y = h.

    Args:
        result: Transformation output
        y: Exponent in [0, 2^n - 1]

    Returns:
        0/1 vector indexed like the QUBO
    """
    n = result.instance.fp.n
    if not 0 <= y < (1 << n):
        raise ValueError(f"exponent {y} outside [0, {(1 << n) - 1}]")
    values = witness_values(result.registry, y)
    return np.array([values[var] for var in result.qubo_vars], dtype=np.uint8)


def metadata_lines(result: TransformResult) -> List[str]:
    """Sidecar text (key=value) describing the QUBO variables and decoding."""
    fp = result.instance.fp
    h = result.instance.h
    reg = result.registry
    lines = [
        f"format={METADATA_FORMAT}",
        f"n={fp.n}",
        f"f={fp.f}",
        f"h_nb={h.to_display_string()}",
        f"optimal={str(fp.optimal).lower()}",
        f"num_vars={result.qubo.num_vars}",
    ]
    lines.extend(f"{key}={value}" for key, value in result.stats.as_dict().items())
    lines.extend(result.decode_map().to_lines())
    for i, var in enumerate(result.qubo_vars):
        lines.append(f"qubo_var.{i}={reg.describe(var)}")
    for var, value in sorted(reg.eliminations.items()):
        lines.append(f"eliminated.{reg.name(var)}={value.format(reg.name)}")
    return lines


def parse_metadata(lines: Iterable[str]) -> Tuple[Dict[str, str], DecodeMap]:
    """Parse sidecar lines into raw fields and the exponent decode map."""
    fields: Dict[str, str] = {}
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise DecodeError(f"malformed metadata line: {line!r}")
        key, value = line.split('=', 1)
        fields[key.strip()] = value.strip()

    if fields.get('format') != METADATA_FORMAT:
        raise DecodeError(f"unsupported metadata format {fields.get('format')!r}")
    return fields, DecodeMap.from_fields(fields)

