"""
Report Module
Tables and Plotly charts for measured variable counts and annealing runs.
"""

from pathlib import Path
from typing import Iterable, List, Optional, Union
import logging

import pandas as pd
import plotly.express as px
import plotly.graph_objects as go

from field.normal_basis import build_field, nb_pow
from reduction.dlp_transform import DlpInstance, transform, variable_count_estimate
from solver.qubo_solver import SolveResult

logger = logging.getLogger(__name__)

COUNT_COLUMNS = [
    'n', 'f', 'optimal', 'measured', 'optimized_estimate', 'naive_estimate',
    'bound', 'within_bound', 'constraints', 'penalties', 'multiplicity_bits', 'eliminated',
]


class VariableCountReport:
    """
    Measured logical-variable counts against the 3n^2 / 4n^2 estimates.
    """

    @staticmethod
    def build_table(n_values: Iterable[int], target_exponent: int = 1) -> pd.DataFrame:
        """
        Transform t^y = t^target_exponent for every n and tabulate the counts.

        Args:
            n_values: Extension degrees
            target_exponent: Exponent defining the target h

        Returns:
            DataFrame with one row per n (columns COUNT_COLUMNS)
        """
        rows = []
        for n in n_values:
            fp = build_field(n)
            h = nb_pow(fp.generator(), target_exponent, fp)
            result = transform(DlpInstance(fp, h))
            stats = result.stats
            bound = 3 * n * n + n
            rows.append({
                'n': n,
                'f': str(fp.f),
                'optimal': fp.optimal,
                'measured': stats.logical_variable_count,
                'optimized_estimate': variable_count_estimate(n, 'optimized'),
                'naive_estimate': variable_count_estimate(n, 'naive'),
                'bound': bound,
                'within_bound': stats.logical_variable_count <= bound,
                'constraints': stats.constraint_count,
                'penalties': stats.penalty_count,
                'multiplicity_bits': stats.multiplicity_count,
                'eliminated': stats.eliminated_count,
            })
            logger.info(f"Report row n={n}: measured {stats.logical_variable_count}, bound {bound}")

        return pd.DataFrame(rows, columns=COUNT_COLUMNS)

    @staticmethod
    def summary_lines(df: pd.DataFrame) -> List[str]:
        """Plain-text findings, one per row plus an overall verdict."""
        if df is None or df.empty:
            return ["No report rows."]

        lines = []
        for row in df.itertuples(index=False):
            share = row.measured / row.optimized_estimate
            lines.append(
                f"n={row.n}: {row.measured} logical variables "
                f"({share:.0%} of 3n^2={row.optimized_estimate}, bound {row.bound})"
            )
        failing = df.loc[~df['within_bound'], 'n'].tolist()
        if failing:
            lines.append(f"Bound 3n^2+n exceeded for n in {failing}")
        else:
            lines.append("All measured counts are within 3n^2+n")
        return lines

    @staticmethod
    def create_count_chart(df: pd.DataFrame) -> Optional[go.Figure]:
        """Line chart of measured counts against both estimates."""
        if df is None or df.empty:
            logger.warning("Cannot generate chart: report is empty")
            return None

        try:
            long_form = df.melt(
                id_vars='n',
                value_vars=['measured', 'optimized_estimate', 'naive_estimate'],
                var_name='series',
                value_name='variables',
            )
            fig = px.line(
                long_form,
                x='n',
                y='variables',
                color='series',
                markers=True,
                title='Logical variables by extension degree',
                labels={'n': 'Extension Degree n', 'variables': 'Logical Variables'},
            )
            fig.update_layout(hovermode='x unified')
            return fig

        except Exception as e:
            logger.error(f"Count chart generation error: {str(e)}")
            return None

    @staticmethod
    def create_energy_histogram(result: SolveResult) -> Optional[go.Figure]:
        """Bar chart of final energies over annealing reads."""
        histogram = result.energy_histogram() if result.energies else {}
        if not histogram:
            logger.warning("Cannot generate histogram: no per-read energies")
            return None

        try:
            df = pd.DataFrame(
                {'energy': list(histogram.keys()), 'reads': list(histogram.values())}
            )
            fig = px.bar(
                df,
                x='energy',
                y='reads',
                title=f"Final energies over {result.reads} reads",
                labels={'energy': 'Energy', 'reads': 'Reads'},
            )
            fig.update_layout(showlegend=False)
            return fig

        except Exception as e:
            logger.error(f"Histogram generation error: {str(e)}")
            return None

    @staticmethod
    def save_html(fig: go.Figure, path: Union[str, Path]) -> Path:
        target = Path(path)
        fig.write_html(str(target), include_plotlyjs='cdn')
        logger.info(f"Wrote chart to {target}")
        return target
