"""
Shared fixtures: field contexts, transformed instances and the hand-derived
11-variable QUBO of the GF(2^3) example with h = t^4 + t^2.
"""

import pytest

from config.solver_config import SolverConfig
from field.normal_basis import NbElement, build_field
from reduction.dlp_transform import DlpInstance, transform
from reduction.pseudo_boolean import LinExpr, PbPoly, rosenberg_penalty, square_to_pb
from solver.qubo_solver import Qubo

# Variable ids of the hand-derived system, in QUBO index order
GOLDEN_VARS = [0, 1, 2, 4, 6, 8, 10, 11, 12, 13, 14]

# y = 5 witness: u0=1, u1=0, u2=1 and the implied auxiliaries
GOLDEN_WITNESS = {0: 1, 1: 0, 2: 1, 4: 0, 6: 1, 8: 0, 10: 0, 11: 0, 12: 0, 13: 1, 14: 0}


def _lin(constant, **coeffs):
    return LinExpr(constant, tuple((int(name[1:]), c) for name, c in coeffs.items()))


@pytest.fixture(scope='session')
def field3():
    return build_field(3)


@pytest.fixture(scope='session')
def field2():
    return build_field(2)


@pytest.fixture(scope='session')
def field5():
    return build_field(5)


@pytest.fixture(scope='session')
def worked_instance(field3):
    return DlpInstance(field3, NbElement.from_display_string('110'))


@pytest.fixture(scope='session')
def worked_result(worked_instance):
    return transform(worked_instance)


@pytest.fixture(scope='session')
def unity_result(field3):
    return transform(DlpInstance(field3, field3.one()))


@pytest.fixture(scope='session')
def golden_poly():
    squares = [
        _lin(1, u0=-1, u4=-1),
        _lin(1, u6=-1, u10=-1),
        _lin(0, u8=1, u1=1, u4=1, u14=-2),
        _lin(0, u11=-1, u12=1, u6=1, u13=-1),
        _lin(1, u13=-1, u4=-1),
        _lin(1, u13=-1, u8=-1, u11=1),
    ]
    penalties = [(1, 4, 10), (2, 8, 11), (2, 4, 12), (2, 6, 13)]

    poly = PbPoly()
    for square in squares:
        poly = poly + square_to_pb(square)
    for x, y, z in penalties:
        poly = poly + rosenberg_penalty(x, y, z)
    return poly


@pytest.fixture(scope='session')
def golden_qubo(golden_poly):
    return Qubo.from_pb(golden_poly, GOLDEN_VARS)


@pytest.fixture
def golden_witness():
    return [GOLDEN_WITNESS[v] for v in GOLDEN_VARS]


@pytest.fixture
def fast_sa_config():
    return SolverConfig(reads=200, sweeps=200, restarts=8, seed=7)
