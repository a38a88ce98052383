import itertools

import pytest
from hypothesis import given
from hypothesis.strategies import integers, lists, tuples

from reduction.pseudo_boolean import (
    Binding,
    InconsistentInstanceError,
    LinExpr,
    PbPoly,
    ReductionError,
    VarRegistry,
    VarRole,
    dump_system,
    linearize,
    linearize_poly,
    multiplicity_bits,
    pb_range,
    rosenberg_penalty,
    simplify,
    square_to_pb,
)


def lin(constant, *terms):
    return LinExpr(constant, tuple(terms))


def assignments(variables):
    for bits in itertools.product((0, 1), repeat=len(variables)):
        yield dict(zip(variables, bits))


@pytest.fixture
def reg():
    registry = VarRegistry()
    for i in range(6):
        registry.new_var(VarRole.EXPONENT, position=i)
    return registry


class TestLinExpr:
    def test_normalizes_terms(self):
        expr = LinExpr(1, ((3, 1), (1, 2), (3, -1)))
        assert expr.terms == ((1, 2),)

    def test_arithmetic(self):
        a = lin(1, (0, -1))
        b = LinExpr.var(0)
        assert a + b == LinExpr.const(1)
        assert 2 * a == lin(2, (0, -2))
        assert 1 - b == a

    def test_literal_views(self):
        assert LinExpr.const(1).literal() == (None, 1)
        assert LinExpr.var(4).literal() == (4, 0)
        assert lin(1, (4, -1)).literal() == (4, 1)
        assert lin(2, (4, -1)).literal() is None
        assert LinExpr.const(2).literal() is None

    def test_format(self):
        assert lin(1, (0, -1), (4, -1)).format() == '1-u0-u4'
        assert lin(0, (8, 1), (14, -2)).format() == 'u8-2u14'


class TestRange:
    def test_affine_bounds(self):
        assert lin(1, (0, -1), (4, -1)).range() == (-1, 1)
        assert lin(0, (8, 1), (1, 1), (4, 1)).range() == (0, 3)

    def test_product_aware_bounds(self):
        # -c + a0*u + a3*u + a1*(1-u): raw bounds (-2, 3), exact (-1, 2)
        u, a0, a1, a3, c = (PbPoly.var(v) for v in range(5))
        poly = -c + a0 * u + a3 * u + a1 * (1 - u)
        assert pb_range(poly, limit=0) == (-2, 3)
        assert pb_range(poly) == (-1, 2)

    def test_coefficient_fallback(self):
        poly = PbPoly(tuple(((v,), 1) for v in range(25)))
        assert pb_range(poly, limit=20) == (0, 25)

    @given(lists(tuples(integers(0, 5), integers(-3, 3)), max_size=6), integers(-3, 3))
    def test_matches_enumeration(self, terms, constant):
        expr = LinExpr(constant, tuple(terms))
        values = [expr.evaluate(a) for a in assignments(list(range(6)))]
        assert pb_range(expr) == (min(values), max(values))
        low, high = expr.range()
        assert low <= min(values) and max(values) <= high


class TestMultiplicityBits:
    def test_one_bit(self, reg):
        bits = multiplicity_bits(LinExpr.var(0), reg, bounds=(-1, 2))
        assert [c for _, c in bits] == [-2]
        assert reg.info(bits[0][0]).role == VarRole.MULTIPLICITY

    def test_no_bits(self, reg):
        assert multiplicity_bits(LinExpr.var(0), reg, bounds=(0, 1)) == []

    def test_two_bits(self, reg):
        bits = multiplicity_bits(LinExpr.var(0), reg, bounds=(-1, 6))
        assert [c for _, c in bits] == [-2, -4]

    def test_reduced_sign_form(self, reg):
        with pytest.raises(ReductionError, match='reduced-sign form'):
            multiplicity_bits(lin(-2, (0, 1)), reg)

    @given(integers(0, 3), integers(0, 12))
    def test_every_even_value_is_reachable(self, low_offset, high):
        registry = VarRegistry()
        bits = multiplicity_bits(LinExpr.var(0), registry, bounds=(low_offset - 1, high))
        carries = {sum(-c * b for (_, c), b in zip(bits, combo))
                   for combo in itertools.product((0, 1), repeat=len(bits))}
        for value in range(0, high + 1, 2):
            assert value in carries


class TestLinearize:
    @pytest.mark.parametrize('x, y, z, expected', [
        (1, 1, 1, 0), (1, 0, 1, 1), (1, 1, 0, 1), (0, 0, 0, 0), (0, 1, 1, 1), (0, 0, 1, 3),
    ])
    def test_penalty_values(self, x, y, z, expected):
        assert rosenberg_penalty(0, 1, 2).evaluate({0: x, 1: y, 2: z}) == expected

    def test_penalty_zero_iff_product(self):
        penalty = rosenberg_penalty(0, 1, 2)
        for a in assignments([0, 1, 2]):
            value = penalty.evaluate(a)
            assert value >= 0
            assert (value == 0) == (a[2] == a[0] * a[1])

    def test_cached(self, reg):
        z1, p1 = linearize(0, 1, reg)
        z2, p2 = linearize(1, 0, reg)
        assert z1 == z2 and p1 == p2
        assert reg.info(z1).role == VarRole.PRODUCT
        assert reg.info(z1).factors == (0, 1)
        assert z1 in reg.penalties

    def test_square_of_variable(self, reg):
        with pytest.raises(ReductionError):
            linearize(2, 2, reg)

    def test_linearize_poly(self, reg):
        u, a = PbPoly.var(0), PbPoly.var(1)
        result = linearize_poly(u * a + 1 - u, reg)
        z = reg.product_of(0, 1)
        assert result == lin(1, (z, 1), (0, -1))

    def test_cubic_rejected(self, reg):
        poly = PbPoly.var(0) * PbPoly.var(1) * PbPoly.var(2)
        with pytest.raises(ReductionError):
            linearize_poly(poly, reg)


class TestSquareToPb:
    def test_f1(self):
        squared = square_to_pb(lin(1, (0, -1), (4, -1)))
        assert squared == PbPoly((((), 1), ((0,), -1), ((4,), -1), ((0, 4), 2)))

    def test_zero(self):
        assert square_to_pb(LinExpr.const(0)) == PbPoly()

    def test_f3_minimum(self):
        expr = lin(0, (8, 1), (1, 1), (4, 1), (14, -2))
        squared = square_to_pb(expr)
        for a in assignments([1, 4, 8, 14]):
            value = squared.evaluate(a)
            assert value >= 0
            assert (value == 0) == (a[8] + a[1] + a[4] == 2 * a[14])

    @given(lists(tuples(integers(0, 4), integers(-3, 3)), max_size=5), integers(-3, 3))
    def test_agrees_with_square(self, terms, constant):
        expr = LinExpr(constant, tuple(terms))
        squared = square_to_pb(expr)
        for a in assignments(list(range(5))):
            assert squared.evaluate(a) == expr.evaluate(a) ** 2

    def test_rejects_quadratic(self):
        with pytest.raises(ReductionError):
            square_to_pb(PbPoly.var(0) * PbPoly.var(1))


class TestSimplify:
    def test_constant_and_merge(self, reg):
        u0 = 0
        v0, v1, v2 = (reg.new_var(VarRole.REGISTER, stage=0, position=k) for k in range(3))
        bindings = [
            Binding(v0, PbPoly.const(1)),
            Binding(v1, 1 - PbPoly.var(u0)),
            Binding(v2, 1 - PbPoly.var(u0)),
        ]
        assert simplify(bindings, reg) == []
        assert reg.eliminations[v0] == PbPoly.const(1)
        assert reg.eliminations[v1] == 1 - PbPoly.var(u0)
        assert reg.eliminations[v2] == 1 - PbPoly.var(u0)

    def test_copy_propagation(self, reg):
        u1, u4 = PbPoly.var(1), PbPoly.var(4)
        v = reg.new_var(VarRole.REGISTER, stage=1, position=1)
        assert simplify([Binding(v, u4 * u1 + (1 - u1) * u4)], reg) == []
        assert reg.eliminations[v] == u4

    def test_chain_of_constants(self, reg):
        v = reg.new_var(VarRole.REGISTER)
        w = reg.new_var(VarRole.REGISTER)
        simplify([Binding(v, PbPoly.const(1)), Binding(w, 1 - PbPoly.var(v))], reg)
        assert reg.eliminations[v] == PbPoly.const(1)
        assert reg.eliminations[w] == PbPoly()

    def test_inconsistent(self, reg):
        v = reg.new_var(VarRole.REGISTER)
        with pytest.raises(InconsistentInstanceError, match='inconsistent instance'):
            simplify([Binding(v, PbPoly.const(1)), Binding(v, PbPoly.const(0))], reg)

    def test_duplicate_expressions_merge(self, reg):
        z, _ = linearize(0, 1, reg)
        c1 = reg.new_var(VarRole.REGISTER)
        c2 = reg.new_var(VarRole.REGISTER)
        expr = PbPoly.var(2) + PbPoly.var(z) - PbPoly.var(3)
        reduced = simplify([Binding(c1, expr), Binding(c2, expr)], reg)
        assert reg.eliminations[c2] == PbPoly.var(c1)
        assert len(reduced) == 1 and reduced[0].var == c1

    def test_parity_literal(self, reg):
        c = reg.new_var(VarRole.REGISTER, parity=True)
        # c = u0 + 2*u1 (mod 2) pins c to u0
        simplify([Binding(c, PbPoly.var(0) + 2 * PbPoly.var(1), parity=True)], reg)
        assert reg.eliminations[c] == PbPoly.var(0)

    def test_surviving_parity_binding(self, reg):
        c = reg.new_var(VarRole.REGISTER, parity=True)
        expr = PbPoly.var(0) + PbPoly.var(1) + PbPoly.var(2)
        reduced = simplify([Binding(c, expr, parity=True, bounds=(-1, 3))], reg)
        assert len(reduced) == 1 and reduced[0].parity


class TestRegistry:
    def test_elimination_chains_resolve(self, reg):
        a = reg.new_var(VarRole.REGISTER)
        b = reg.new_var(VarRole.REGISTER)
        reg.eliminate(b, PbPoly.var(a))
        reg.eliminate(a, 1 - PbPoly.var(0))
        assert reg.eliminations[b] == 1 - PbPoly.var(0)
        assert not reg.is_live(a) and a not in reg.live_vars()

    def test_self_elimination(self, reg):
        with pytest.raises(ReductionError):
            reg.eliminate(0, PbPoly.var(0))

    def test_describe(self, reg):
        z, _ = linearize(1, 4, reg, stage=2)
        assert reg.describe(z) == f"u{z} product stage=2 factors=u1*u4"


class TestDumpSystem:
    def test_format(self, reg):
        text = dump_system(
            reg,
            squares=[lin(1, (0, -1), (4, -1))],
            penalties=[(PbPoly.var(1), PbPoly.var(4), PbPoly.var(5))],
        )
        assert text.splitlines() == ['F1=(1-u0-u4)^2', 'Pen1=Pen(u1,u4,u5)']
