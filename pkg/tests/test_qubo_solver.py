import itertools

import dimod
import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis.strategies import dictionaries, integers, tuples

from config.solver_config import SolverConfig
from reduction.dlp_transform import decode_solution, transform, DlpInstance
from field.normal_basis import nb_pow
from solver.qubo_solver import (
    Qubo,
    SolveResult,
    SolverGuardError,
    energy,
    exhaustive_solve,
    read_seed,
    simulated_annealing,
)

TOY = Qubo(2, {0: 1, 1: 1}, {(0, 1): -2})


def brute_minima(q):
    values = {bits: energy(q, bits) for bits in itertools.product((0, 1), repeat=q.num_vars)}
    best = min(values.values())
    return best, sorted(bits for bits, value in values.items() if value == best)


class TestQubo:
    def test_normalizes(self):
        q = Qubo(3, {0: 1, 2: 0}, {(1, 0): 2, (0, 1): -2, (2, 2): 3})
        assert q.linear == {0: 1, 2: 3}
        assert q.quadratic == {}

    def test_index_range(self):
        with pytest.raises(ValueError):
            Qubo(2, {2: 1})

    def test_terms_and_matrix(self):
        assert TOY.terms() == [(0, 0, 1), (0, 1, -2), (1, 1, 1)]
        np.testing.assert_array_equal(TOY.to_matrix(), [[1, -2], [0, 1]])

    def test_relabel(self):
        q = Qubo(3, {0: 5}, {(0, 2): 1})
        moved = q.relabel([2, 0, 1])
        assert moved.linear == {2: 5}
        assert moved.quadratic == {(1, 2): 1}
        assert energy(moved, (1, 0, 1)) == energy(q, (1, 1, 0))

    def test_relabel_needs_permutation(self):
        with pytest.raises(ValueError):
            TOY.relabel([0, 0])

    def test_scale(self):
        scaled = TOY.scale(3)
        assert scaled.linear == {0: 3, 1: 3}
        with pytest.raises(ValueError):
            TOY.scale(0)

    def test_from_pb(self, golden_poly, golden_qubo):
        assert golden_qubo.num_vars == 11
        with pytest.raises(ValueError):
            Qubo.from_pb(golden_poly, [0, 1, 2])


class TestEnergy:
    def test_toy(self):
        assert energy(TOY, (1, 1)) == 0
        assert energy(TOY, (1, 0)) == 1

    def test_mapping(self):
        assert energy(TOY, {0: 1, 1: 1}) == 0

    def test_missing_variable(self):
        with pytest.raises(ValueError):
            energy(TOY, (1,))
        with pytest.raises(ValueError):
            energy(TOY, {0: 1})

    def test_golden(self, golden_qubo, golden_witness):
        assert energy(golden_qubo, golden_witness) == 0
        assert energy(golden_qubo, [0] * 11) == 4


class TestExhaustiveSolve:
    def test_toy(self):
        result = exhaustive_solve(TOY)
        assert result.best_energy == 0
        assert result.best_assignments == [(0, 0), (1, 1)]
        assert result.reads == 4
        assert result.successes_at_best == 2

    def test_golden_unique_minimum(self, golden_qubo, golden_witness):
        result = exhaustive_solve(golden_qubo)
        assert result.best_energy == 0
        assert result.best_assignments == [tuple(golden_witness)]
        u0, u1, u2 = result.best_assignment[:3]
        assert u0 + 2 * u1 + 4 * u2 == 5

    def test_unity_instance(self, unity_result):
        result = exhaustive_solve(unity_result.qubo)
        assert result.best_energy == 0
        assert len(result.best_assignments) == 2

    def test_guard(self, golden_qubo):
        with pytest.raises(SolverGuardError, match='annealing'):
            exhaustive_solve(golden_qubo, max_vars=10)

    def test_empty(self):
        result = exhaustive_solve(Qubo(0, offset=3))
        assert result.best_energy == 3
        assert result.best_assignments == [()]

    def test_gray_code_walk_beyond_low_block(self):
        # 18 variables exercises the high-bit walk; unique minimum at x_i = i % 2
        n = 18
        linear = {i: (-1 if i % 2 else 1) for i in range(n)}
        quadratic = {(0, 17): 2, (3, 17): -1, (5, 16): 1}
        q = Qubo(n, linear, quadratic)
        result = exhaustive_solve(q)
        expected = tuple(i % 2 for i in range(n))
        assert result.best_assignments == [expected]
        assert result.best_energy == energy(q, expected)

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(
        dictionaries(integers(0, 5), integers(-4, 4), max_size=6),
        dictionaries(tuples(integers(0, 5), integers(0, 5)), integers(-4, 4), max_size=8),
        integers(-3, 3),
    )
    def test_matches_brute_force(self, linear, quadratic, offset):
        q = Qubo(6, linear, quadratic, offset)
        result = exhaustive_solve(q)
        best, argmins = brute_minima(q)
        assert result.best_energy == best
        assert sorted(result.best_assignments) == argmins

    def test_argmin_storage_is_capped(self):
        result = exhaustive_solve(Qubo(18), max_argmins=8)
        assert result.best_energy == 0
        assert result.successes_at_best == 1 << 18
        assert len(result.best_assignments) == 8
        assert result.best_assignments[0] == (0,) * 18
        assert result.best_assignments[7] == (1, 1, 1) + (0,) * 15

    def test_cap_keeps_every_argmin_when_room(self, unity_result):
        result = exhaustive_solve(unity_result.qubo, max_argmins=2)
        assert result.successes_at_best == len(result.best_assignments) == 2

    def test_rejects_empty_cap(self):
        with pytest.raises(ValueError):
            exhaustive_solve(TOY, max_argmins=0)


def exact_solver_minima(q):
    lowest = dimod.ExactSolver().sample(q.to_bqm()).lowest()
    states = sorted(tuple(int(sample[i]) for i in range(q.num_vars)) for sample in lowest.samples())
    return int(round(lowest.first.energy)), states


class TestExactSolverAgreement:
    def test_toy(self):
        result = exhaustive_solve(TOY)
        assert exact_solver_minima(TOY) == (result.best_energy, sorted(result.best_assignments))

    def test_golden(self, golden_qubo, golden_witness):
        assert exact_solver_minima(golden_qubo) == (0, [tuple(golden_witness)])

    def test_unity_instance(self, unity_result):
        result = exhaustive_solve(unity_result.qubo)
        assert exact_solver_minima(unity_result.qubo) == (0, sorted(result.best_assignments))

    def test_bqm_energies(self, golden_qubo, golden_witness):
        bqm = golden_qubo.to_bqm()
        assert len(bqm.variables) == golden_qubo.num_vars
        assert bqm.energy(dict(enumerate(golden_witness))) == 0
        assert bqm.energy({i: 0 for i in range(11)}) == 4


class TestSimulatedAnnealing:
    def test_default_schedule_success_rate(self, golden_qubo):
        result = simulated_annealing(golden_qubo, SolverConfig())
        assert result.best_energy == 0
        assert result.method == 'sa'
        assert len(result.energies) == 1000
        assert result.successes_at_best >= 990

    def test_single_variable(self):
        q = Qubo(1, {0: -1})
        result = simulated_annealing(q, reads=10, sweeps=20, restarts=2)
        assert result.best_energy == -1
        assert result.best_assignment == (1,)

    def test_deterministic(self, golden_qubo, fast_sa_config):
        first = simulated_annealing(golden_qubo, fast_sa_config)
        second = simulated_annealing(golden_qubo, fast_sa_config)
        assert first == second

    def test_reads_do_not_depend_on_run_length(self, golden_qubo, fast_sa_config):
        short = simulated_annealing(golden_qubo, fast_sa_config, reads=50)
        long = simulated_annealing(golden_qubo, fast_sa_config)
        assert long.energies[:50] == short.energies

    def test_read_seeds(self):
        assert read_seed(7, 0) == read_seed(7, 0)
        assert read_seed(7, 0) != read_seed(7, 1)
        assert 0 <= read_seed(7, 1) < 1 << 32

    def test_energies_match_assignment(self, golden_qubo, fast_sa_config):
        result = simulated_annealing(golden_qubo, fast_sa_config)
        assert energy(golden_qubo, result.best_assignment) == result.best_energy
        assert min(result.energies) == result.best_energy

    def test_histogram(self, golden_qubo, fast_sa_config):
        result = simulated_annealing(golden_qubo, fast_sa_config)
        histogram = result.energy_histogram()
        assert sum(histogram.values()) == fast_sa_config.reads

    def test_rejects_zero_reads(self, golden_qubo):
        with pytest.raises(ValueError):
            simulated_annealing(golden_qubo, reads=0)

    def test_rejects_bad_schedule(self, golden_qubo):
        with pytest.raises(ValueError):
            simulated_annealing(golden_qubo, reads=1, schedule='cubic')

    @pytest.mark.slow
    def test_gf32_instance(self, field5):
        result = transform(DlpInstance(field5, nb_pow(field5.generator(), 17, field5)))
        solved = simulated_annealing(result.qubo, SolverConfig(reads=500, sweeps=1000, restarts=8, seed=3))
        assert solved.best_energy == 0
        assert decode_solution(solved.best_assignment, result) == 17


class TestSolveResult:
    def test_best_assignment(self):
        result = SolveResult(0, [(1, 0), (0, 1)], 4, 2, 'exhaustive')
        assert result.best_assignment == (1, 0)
        assert result.energy_histogram() == {}
