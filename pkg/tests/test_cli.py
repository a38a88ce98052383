import pytest
from pydantic import ValidationError

from app import main
from cli.commands import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED
from cli.run_config import Command, Method, RunConfig
from solver.qubo_io import metadata_path, read_qubo


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def machine_values(text):
    return dict(line.split('=', 1) for line in text.splitlines() if '=' in line)


class TestFieldInfo:
    def test_human(self, capsys):
        code, out, _ = run_cli(capsys, 'field-info', '--n', '3')
        assert code == EXIT_OK
        assert 't^3+t^2+1' in out
        assert 'optimal' in out

    def test_machine(self, capsys):
        code, out, _ = run_cli(capsys, '--machine', 'field-info', '--n', '3', '--rotations')
        values = machine_values(out)
        assert code == EXIT_OK
        assert values['optimal'] == 'true'
        assert values['nonzero_count'] == '5'
        assert values['f_hex'] == '0xd'
        assert [values[f'm_n2p.{i}'] for i in range(3)] == ['111', '100', '010']
        assert [values[f't0.{i}'] for i in range(3)] == ['010', '101', '011']
        assert 't2.0' in values

    def test_unsupported_degree(self, capsys):
        code, _, err = run_cli(capsys, 'field-info', '--n', '4')
        assert code == EXIT_INPUT_ERROR
        assert 'error:' in err

    def test_degree_above_maximum(self, capsys):
        code, _, err = run_cli(capsys, 'field-info', '--n', '1000')
        assert code == EXIT_INPUT_ERROR
        assert 'exceeds the supported maximum' in err


class TestEndToEnd:
    def test_worked_example(self, capsys):
        code, out, _ = run_cli(capsys, 'e2e', '--n', '3', '--h-nb', '110', '--method', 'exhaustive')
        assert code == EXIT_OK
        assert 'y=5 verified=true' in out

    def test_polynomial_input(self, capsys):
        code, out, _ = run_cli(capsys, 'e2e', '--n', '3', '--h-poly', '0x3')
        assert code == EXIT_OK
        assert 'y=5 verified=true' in out

    def test_unity_reports_both_minima(self, capsys):
        code, out, _ = run_cli(capsys, 'e2e', '--n', '3', '--h-nb', '111', '--method', 'exhaustive')
        assert code == EXIT_OK
        assert 'y=0 verified=true' in out
        assert 'y=7 verified=true' in out

    def test_machine(self, capsys):
        code, out, _ = run_cli(capsys, '--machine', 'e2e', '--n', '3', '--h-nb', '110')
        values = machine_values(out)
        assert code == EXIT_OK
        assert values['method'] == 'exhaustive'
        assert values['energy'] == '0'
        assert values['solution.0.y'] == '5'
        assert values['verified'] == 'true'
        assert values['h_poly'] == '0x3'

    def test_annealing_with_plot(self, capsys, tmp_path):
        plot = tmp_path / 'energies.html'
        code, out, _ = run_cli(
            capsys, 'e2e', '--n', '3', '--h-nb', '110', '--method', 'sa',
            '--reads', '200', '--sweeps', '100', '--restarts', '4', '--seed', '5', '--plot', str(plot),
        )
        assert code == EXIT_OK
        assert 'y=5 verified=true' in out
        assert plot.exists()

    def test_dump(self, capsys):
        code, out, _ = run_cli(capsys, 'e2e', '--n', '3', '--h-nb', '110', '--dump')
        assert code == EXIT_OK
        assert 'F1=(' in out

    @pytest.mark.parametrize('bits', ['000', '11', '1a0'])
    def test_bad_target(self, capsys, bits):
        code, _, err = run_cli(capsys, 'e2e', '--n', '3', '--h-nb', bits)
        assert code == EXIT_INPUT_ERROR
        assert err

    def test_degree_below_two(self, capsys):
        code, _, _ = run_cli(capsys, 'e2e', '--n', '1', '--h-nb', '1')
        assert code == EXIT_INPUT_ERROR

    def test_degree_above_maximum(self, capsys):
        code, _, err = run_cli(capsys, 'e2e', '--n', '65', '--h-nb', '1' * 65)
        assert code == EXIT_INPUT_ERROR
        assert 'exceeds the supported maximum' in err


class TestFileWorkflow:
    def test_transform_solve_decode(self, capsys, tmp_path):
        qubo_path = tmp_path / 'example.qubo'
        solution_path = tmp_path / 'example.sol'

        code, out, _ = run_cli(capsys, 'transform', '--n', '3', '--h-nb', '110', '--out', str(qubo_path))
        assert code == EXIT_OK
        assert qubo_path.exists() and metadata_path(qubo_path).exists()
        assert 'logical variables' in out

        code, out, _ = run_cli(
            capsys, 'solve', '--in', str(qubo_path), '--out', str(solution_path), '--method', 'exhaustive'
        )
        assert code == EXIT_OK
        assert 'best energy 0' in out

        code, out, _ = run_cli(capsys, 'decode', '--in', str(qubo_path), '--solution', str(solution_path))
        assert code == EXIT_OK
        assert out.strip() == 'y=5 verified=true'

    def test_decode_rejects_wrong_assignment(self, capsys, tmp_path):
        qubo_path = tmp_path / 'example.qubo'
        run_cli(capsys, 'transform', '--n', '3', '--h-nb', '110', '--out', str(qubo_path))
        zeros = '0' * read_qubo(qubo_path).num_vars
        solution_path = tmp_path / 'bad.sol'
        solution_path.write_text(f'energy=0\nassignment={zeros}\n')

        code, out, _ = run_cli(
            capsys, '--machine', 'decode', '--meta', str(metadata_path(qubo_path)),
            '--solution', str(solution_path),
        )
        assert code == EXIT_VERIFICATION_FAILED
        assert machine_values(out)['verified'] == 'false'

    def test_solve_machine_output(self, capsys, tmp_path):
        qubo_path = tmp_path / 'example.qubo'
        run_cli(capsys, 'transform', '--n', '2', '--h-nb', '01', '--out', str(qubo_path))
        code, out, _ = run_cli(capsys, '--machine', 'solve', '--in', str(qubo_path))
        assert code == EXIT_OK
        assert machine_values(out)['energy'] == '0'

    def test_missing_qubo_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, 'solve', '--in', str(tmp_path / 'absent.qubo'))
        assert code == EXIT_INPUT_ERROR
        assert 'cannot read' in err


class TestReport:
    def test_human(self, capsys, tmp_path):
        csv_path = tmp_path / 'counts.csv'
        code, out, _ = run_cli(capsys, 'report', '--n-list', '2,3', '--csv', str(csv_path))
        assert code == EXIT_OK
        assert 'All measured counts are within 3n^2+n' in out
        assert csv_path.read_text().startswith('n,f,optimal,measured')

    def test_machine(self, capsys):
        code, out, _ = run_cli(capsys, '--machine', 'report', '--n-list', '2,3')
        values = machine_values(out)
        assert code == EXIT_OK
        assert values['n.2.within_bound'] == 'true'
        assert values['n.3.optimized_estimate'] == '27'

    def test_bad_degree_in_list(self, capsys):
        code, _, _ = run_cli(capsys, 'report', '--n-list', '1,3')
        assert code == EXIT_INPUT_ERROR

    def test_degree_above_maximum_in_list(self, capsys):
        code, _, err = run_cli(capsys, 'report', '--n-list', '3,100')
        assert code == EXIT_INPUT_ERROR
        assert 'exceeds the supported maximum' in err


class TestStats:
    def test_rate(self, capsys):
        code, out, _ = run_cli(capsys, 'stats', 'rate', '--trials', '10000', '--successes', '7415')
        assert code == EXIT_OK
        assert machine_values(out)['rate'] == '0.7415'

    def test_rate_out_of_range(self, capsys):
        code, _, _ = run_cli(capsys, 'stats', 'rate', '--trials', '10', '--successes', '11')
        assert code == EXIT_INPUT_ERROR

    def test_tail(self, capsys):
        code, out, _ = run_cli(
            capsys, '--machine', 'stats', 'tail', '--trials', '10000', '--threshold', '5000',
            '--space-bits', '11',
        )
        values = machine_values(out)
        assert code == EXIT_OK
        assert values['random'] == 'false'
        assert float(values['log10_tail']) == pytest.approx(-13549.5, abs=1.0)

    def test_tail_human_verdict(self, capsys):
        code, out, _ = run_cli(
            capsys, 'stats', 'tail', '--trials', '100', '--threshold', '1', '--space-bits', '2',
        )
        assert code == EXIT_OK
        assert 'consistent with random guessing' in out


class TestArgumentHandling:
    def test_mutually_exclusive_targets(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(['e2e', '--n', '3', '--h-nb', '110', '--h-poly', '0x3'])
        assert excinfo.value.code == 2

    def test_unknown_method(self, capsys):
        with pytest.raises(SystemExit):
            main(['e2e', '--n', '3', '--h-nb', '110', '--method', 'qaoa'])


class TestRunConfig:
    def test_both_targets(self, tmp_path):
        with pytest.raises(ValidationError, match='not both'):
            RunConfig(command='transform', n=3, h_nb='110', h_poly='0x3', out_path=tmp_path / 'x')

    def test_missing_inputs(self):
        with pytest.raises(ValidationError, match='transform requires --out'):
            RunConfig(command='transform', n=3, h_nb='110')

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            RunConfig(command='report', n_list=[2], colour='red')

    def test_defaults(self):
        config = RunConfig(command='e2e', n=3, h_nb='110')
        assert config.command is Command.E2E
        assert config.method is Method.AUTO
        assert config.solver_overrides()['reads'] is None

    def test_sidecar_path(self, tmp_path):
        config = RunConfig(command='decode', in_path=tmp_path / 'a.qubo', solution_path=tmp_path / 's')
        assert config.sidecar_path() == tmp_path / 'a.qubo.meta'
