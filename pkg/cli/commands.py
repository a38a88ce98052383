"""
Command Dispatch Module
Runs one validated RunConfig against the library and writes the result
to stdout, either as readable text or as line-oriented key=value pairs.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from typing import Callable, Dict, List, Optional, TextIO, Tuple
import logging
import sys

from analytics.report import VariableCountReport
from analytics.verify_stats import TrialStats, randomness_verdict, success_rate, verify
from config.solver_config import SolverConfig
from field.normal_basis import (
    FieldParams,
    NbElement,
    build_field,
    convert,
    type_ii_precheck,
)
from reduction.dlp_transform import (
    DlpInstance,
    TransformResult,
    metadata_lines,
    parse_metadata,
    transform,
    variable_count_estimate,
)
from solver.executor import SolverExecutor
from solver.qubo_io import (
    bitstring,
    metadata_path,
    parse_solution,
    read_lines,
    read_qubo,
    solution_lines,
    write_lines,
    write_qubo,
)
from solver.qubo_solver import SolveResult
from utils.helpers import format_bit_grid, format_fraction, format_key_values, format_table
from utils.validators import ElementValidator
from .run_config import Command, RunConfig, StatsAction

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2

REPORT_TABLE_COLUMNS = ['n', 'measured', 'optimized_estimate', 'naive_estimate', 'bound', 'within_bound']

Pairs = List[Tuple[str, object]]


def _emit(out: TextIO, text: str):
    if text:
        out.write(text if text.endswith('\n') else text + '\n')


def _element_pairs(prefix: str, element: NbElement, fp: FieldParams) -> Pairs:
    return [
        (f'{prefix}_nb', element.to_display_string()),
        (f'{prefix}_poly', convert(element, 'nb->poly', fp).to_hex()),
    ]


def _field(n: int) -> FieldParams:
    ok, message = ElementValidator.validate_degree(n)
    if not ok:
        raise ValueError(message)
    return build_field(n)


def _instance(config: RunConfig) -> DlpInstance:
    fp = _field(config.n)
    h = ElementValidator.parse_element(fp, config.h_nb, config.h_poly)
    return DlpInstance(fp, h)


def _solution_pairs(exponents: List[int], energy: int, inst: DlpInstance) -> Tuple[Pairs, bool]:
    """(y, verified) per decoded exponent; overall verdict needs at least one."""
    pairs: Pairs = []
    all_verified = bool(exponents)
    for k, y in enumerate(exponents):
        ok = energy == 0 and verify(y, inst)
        all_verified = all_verified and ok
        pairs.append((f'solution.{k}.y', y))
        pairs.append((f'solution.{k}.verified', ok))
    pairs.append(('verified', all_verified))
    return pairs, all_verified


def _solution_text(pairs: Pairs) -> str:
    values = dict(pairs)
    lines = []
    k = 0
    while f'solution.{k}.y' in values:
        verified = str(values[f'solution.{k}.verified']).lower()
        lines.append(f"y={values[f'solution.{k}.y']} verified={verified}")
        k += 1
    if not lines:
        lines.append("no solution decoded verified=false")
    return '\n'.join(lines)


def _save_histogram(result: SolveResult, config: RunConfig):
    if config.plot_path is None:
        return
    fig = VariableCountReport.create_energy_histogram(result)
    if fig is None:
        logger.warning("No energy histogram for this solver run; skipping --plot")
        return
    VariableCountReport.save_html(fig, config.plot_path)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def field_info(config: RunConfig, out: TextIO) -> int:
    """Field polynomial, basis-change matrices, T0 and the optimality verdict."""
    fp = _field(config.n)
    pairs: Pairs = [
        ('n', fp.n),
        ('f', str(fp.f)),
        ('f_hex', fp.f.to_hex()),
        ('optimal', fp.optimal),
        ('nonzero_count', fp.nonzero_count),
        ('optimal_count', 2 * fp.n - 1),
        ('type_ii_precheck', type_ii_precheck(fp.n)),
    ]
    matrices = [('m_n2p', fp.display_m_n2p()), ('m_p2n', fp.display_m_p2n()), ('t0', fp.t0)]
    if config.rotations:
        matrices.extend((f't{l}', fp.rotated_matrix(l)) for l in range(1, fp.n))

    if config.machine:
        for name, matrix in matrices:
            pairs.extend((f'{name}.{i}', bitstring(row)) for i, row in enumerate(matrix))
        _emit(out, format_key_values(pairs))
        return EXIT_OK

    verdict = 'optimal' if fp.optimal else 'NOT optimal'
    lines = [
        f"GF(2^{fp.n}) with f(t) = {fp.f} ({fp.f.to_hex()})",
        f"T0 has {fp.nonzero_count} nonzero entries (2n-1 = {2 * fp.n - 1}): {verdict}",
        f"Type-II precheck (2n+1 prime, 2 generates): {str(type_ii_precheck(fp.n)).lower()}",
        "M(N->P), rows t^(2^(n-1))..t, columns t^(n-1)..1:",
        format_bit_grid(fp.display_m_n2p()),
        "M(P->N), same display order:",
        format_bit_grid(fp.display_m_p2n()),
        "T0[i][j] = t-coordinate of t^(2^i) * t^(2^j):",
        format_bit_grid(fp.t0),
    ]
    for name, matrix in matrices[3:]:
        lines.append(f"T({name[1:]}):")
        lines.append(format_bit_grid(matrix))
    _emit(out, '\n'.join(lines))
    return EXIT_OK


def _transform_pairs(result: TransformResult) -> Pairs:
    inst = result.instance
    stats = result.stats
    pairs: Pairs = [('n', inst.fp.n), ('f', str(inst.fp.f))]
    pairs.extend(_element_pairs('h', inst.h, inst.fp))
    pairs.extend([
        ('num_vars', stats.logical_variable_count),
        ('constraints', stats.constraint_count),
        ('penalties', stats.penalty_count),
        ('multiplicity_bits', stats.multiplicity_count),
        ('eliminated', stats.eliminated_count),
        ('estimate_3n2', variable_count_estimate(inst.fp.n, 'optimized')),
    ])
    return pairs


def transform_command(config: RunConfig, out: TextIO) -> int:
    """Write the QUBO file and its decode sidecar."""
    result = transform(_instance(config))
    inst = result.instance
    meta = metadata_path(config.out_path)
    write_qubo(
        result.qubo,
        config.out_path,
        comments=[f"GF(2^{inst.fp.n}) f={inst.fp.f} h_nb={inst.h.to_display_string()}"],
    )
    write_lines(metadata_lines(result), meta)

    pairs = _transform_pairs(result) + [('qubo', config.out_path), ('meta', meta)]
    if config.machine:
        _emit(out, format_key_values(pairs))
        return EXIT_OK

    values = dict(pairs)
    _emit(out, '\n'.join([
        f"h = {values['h_nb']} (normal basis) = {values['h_poly']} (polynomial basis)",
        f"{values['num_vars']} logical variables (3n^2 = {values['estimate_3n2']}), "
        f"{values['constraints']} squared constraints, {values['penalties']} penalties",
        f"Wrote {config.out_path} and {meta}",
    ]))
    if config.dump:
        _emit(out, result.dump())
    return EXIT_OK


def solve_command(config: RunConfig, out: TextIO) -> int:
    q = read_qubo(config.in_path)
    executor = SolverExecutor(SolverConfig.from_settings(**config.solver_overrides()))
    result, error = executor.solve(q, config.method.value)
    if result is None:
        print(error, file=sys.stderr)
        return EXIT_INPUT_ERROR

    lines = solution_lines(result)
    if config.out_path is not None:
        write_lines(lines, config.out_path)
    _save_histogram(result, config)

    if config.machine:
        _emit(out, '\n'.join(lines))
    else:
        _emit(out, '\n'.join([
            f"{result.method}: best energy {result.best_energy} over {result.reads} reads "
            f"({result.successes_at_best} at best, {len(result.best_assignments)} listed argmin)",
            f"assignment={bitstring(result.best_assignment)}",
        ]))
    return EXIT_OK


def decode_command(config: RunConfig, out: TextIO) -> int:
    """Decode a stored solution through the transform sidecar and verify it."""
    fields, decode_map = parse_metadata(read_lines(config.sidecar_path()))
    energy, assignments = parse_solution(read_lines(config.solution_path))

    try:
        fp = _field(int(fields['n']))
        h = NbElement.from_display_string(fields['h_nb'])
    except KeyError as e:
        raise ValueError(f"metadata is missing {e}") from None
    inst = DlpInstance(fp, h)

    exponents = sorted({decode_map.decode(a) for a in assignments})
    pairs, verified = _solution_pairs(exponents, energy, inst)
    if config.machine:
        _emit(out, format_key_values([('energy', energy)] + pairs))
    else:
        _emit(out, _solution_text(pairs))
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def e2e_command(config: RunConfig, out: TextIO) -> int:
    """transform -> solve -> decode -> verify in one process."""
    result = transform(_instance(config))
    executor = SolverExecutor(SolverConfig.from_settings(**config.solver_overrides()))
    solution, error = executor.solve_instance(result, config.method.value, config.max_retries)
    if solution is None:
        print(error, file=sys.stderr)
        return EXIT_INPUT_ERROR

    solved = solution.solve_result
    _save_histogram(solved, config)
    pairs, verified = _solution_pairs(solution.exponents, solved.best_energy, result.instance)

    if config.machine:
        header = _transform_pairs(result) + [
            ('method', solved.method),
            ('energy', solved.best_energy),
            ('attempts', solution.attempts),
        ]
        _emit(out, format_key_values(header + pairs))
    else:
        values = dict(_transform_pairs(result))
        if config.dump:
            _emit(out, result.dump())
        _emit(out, '\n'.join([
            f"GF(2^{values['n']}) f(t) = {values['f']}; "
            f"h = {values['h_nb']} (normal basis) = {values['h_poly']} (polynomial basis)",
            f"{values['num_vars']} logical variables; {solved.method} best energy "
            f"{solved.best_energy} after {solution.attempts} attempt(s)",
            _solution_text(pairs),
        ]))
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def report_command(config: RunConfig, out: TextIO) -> int:
    """Measured vs estimated variable counts; fails when a row exceeds 3n^2+n."""
    df = VariableCountReport.build_table(config.n_list, config.target_exponent)
    if config.csv_path is not None:
        df.to_csv(config.csv_path, index=False)
        logger.info(f"Wrote report table to {config.csv_path}")
    if config.plot_path is not None:
        fig = VariableCountReport.create_count_chart(df)
        if fig is not None:
            VariableCountReport.save_html(fig, config.plot_path)

    if config.machine:
        pairs: Pairs = []
        for row in df.to_dict('records'):
            pairs.extend((f"n.{row['n']}.{col}", row[col]) for col in REPORT_TABLE_COLUMNS[1:])
        _emit(out, format_key_values(pairs))
    else:
        _emit(out, format_table(df.to_dict('records'), REPORT_TABLE_COLUMNS))
        _emit(out, '\n'.join(VariableCountReport.summary_lines(df)))

    return EXIT_OK if bool(df['within_bound'].all()) else EXIT_VERIFICATION_FAILED


def stats_command(config: RunConfig, out: TextIO) -> int:
    if config.stats_action == StatsAction.RATE:
        rate = success_rate(TrialStats(config.trials, config.successes))
        pairs: Pairs = [
            ('trials', config.trials),
            ('successes', config.successes),
            ('rate', format_fraction(rate)),
        ]
        _emit(out, format_key_values(pairs))
        return EXIT_OK

    verdict = randomness_verdict(
        config.trials, config.threshold, config.space_bits, significance=config.significance
    )
    pairs = [
        ('trials', config.trials),
        ('threshold', config.threshold),
        ('space_bits', config.space_bits),
        ('log10_tail', f"{verdict.log10_tail:.4f}"),
        ('significance', verdict.significance),
        ('random', not verdict.rejected),
    ]
    _emit(out, format_key_values(pairs))
    if not config.machine:
        _emit(out, verdict.message)
    return EXIT_OK


_HANDLERS: Dict[Command, Callable[[RunConfig, TextIO], int]] = {
    Command.FIELD_INFO: field_info,
    Command.TRANSFORM: transform_command,
    Command.SOLVE: solve_command,
    Command.DECODE: decode_command,
    Command.E2E: e2e_command,
    Command.REPORT: report_command,
    Command.STATS: stats_command,
}


def run(config: RunConfig, out: Optional[TextIO] = None) -> int:
    """
    Execute one command.

    Args:
        config: Validated invocation
        out: Destination for results (defaults to stdout)

    Returns:
        Exit status (0 success, 1 verification failure, 2 input error)
    """
    out = out or sys.stdout
    handler = _HANDLERS[config.command]
    logger.info(f"Running command {config.command.value}")
    try:
        return handler(config, out)
    except (ValueError, OSError) as e:
        logger.error(f"{config.command.value} failed: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
