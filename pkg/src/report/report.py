import json
from typing import Any
from typing import Sequence

from jinja2 import Environment
from jinja2 import FileSystemLoader
from simple_logger.logger import get_logger

from src.evaluation.cross_validation import ExperimentReport
from src.intransitivity.intransitivity import IntransReport
from src.report.constants import BENCHMARK_TEMPLATE
from src.report.constants import EXPERIMENT_COLUMNS
from src.report.constants import EXPERIMENT_TEMPLATE
from src.report.constants import FOLD_COLUMNS
from src.report.constants import INTRANS_COLUMNS
from src.report.constants import INTRANS_TEMPLATE
from src.report.constants import OUTPUT_FORMATS
from src.report.constants import TEMPLATES_DIR

LOGGER = get_logger(__name__)

Row = Sequence[str]


def column_widths(columns: Row, rows: Sequence[Row]) -> list[int]:
    return [max(len(str(cell)) for cell in column) for column in zip(columns, *rows)]


def format_row(row: Row, widths: Sequence[int]) -> str:
    return "  ".join(str(cell).ljust(width) for cell, width in zip(row, widths)).rstrip()


def format_rule(widths: Sequence[int]) -> str:
    return "  ".join("-" * width for width in widths)


def _environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(TEMPLATES_DIR),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.globals.update(column_widths=column_widths, format_row=format_row, format_rule=format_rule)
    return env


def render_template(template_name: str, **context: Any) -> str:
    """
    Render one of the table templates.

    Args:
        template_name (str): File name under the templates directory.
        **context: Template variables.

    Returns:
        str: The rendered text.
    """
    return _environment().get_template(template_name).render(**context)


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _check_format(output_format: str) -> None:
    if output_format not in OUTPUT_FORMATS:
        raise ValueError(f"unknown output format {output_format!r}, expected one of {OUTPUT_FORMATS}")


def percent(value: float) -> str:
    return f"{100 * value:.2f}%"


def accuracy_cell(mean: float, std: float) -> str:
    return f"{mean:.4f} +/- {std:.4f}"


def intrans_row(report: IntransReport) -> list[str]:
    return [
        report.dataset,
        str(report.n_players),
        str(report.n_outcomes),
        str(report.n_pairs),
        percent(report.pair_coverage),
        str(report.is_intrans).lower(),
        percent(report.intrans_at_3),
        f"{report.player_intrans_at_3}/{report.n_players}",
    ]


def render_intrans(report: IntransReport, output_format: str = "table") -> str:
    """Dataset survey row: size, coverage, isIntrans, Intrans@3 and PlayerIntrans@3."""
    _check_format(output_format)
    if output_format == "json":
        return to_json(report.to_dict())
    labels = report.players.labels
    return render_template(
        INTRANS_TEMPLATE,
        columns=INTRANS_COLUMNS,
        rows=[intrans_row(report)],
        cycles=[[labels[player] for player in cycle] for cycle in report.cycles_found],
        truncated=report.truncated,
    )


def render_experiment(report: ExperimentReport, output_format: str = "table") -> str:
    _check_format(output_format)
    if output_format == "json":
        return to_json(report.to_dict())
    fold_rows = []
    for index, (accuracy, point, unseen) in enumerate(zip(report.fold_accuracies, report.chosen, report.unseen_players)):
        dim, regularization = ("-", "-") if point is None else (str(point[0]), f"{point[1]:g}")
        fold_rows.append([str(index), f"{accuracy:.4f}", dim, regularization, ",".join(unseen) or "-"])
    summary = [report.dataset, report.kind.display_name, str(report.k), f"{report.mean:.4f}", f"{report.std:.4f}"]
    intrans = report.intrans
    return render_template(
        EXPERIMENT_TEMPLATE,
        summary_columns=EXPERIMENT_COLUMNS,
        summary_rows=[summary],
        fold_columns=FOLD_COLUMNS,
        fold_rows=fold_rows,
        intrans=(
            f"isIntrans={str(intrans['is_intrans']).lower()} Intrans@3={percent(intrans['intrans_at_3'])} "
            f"PlayerIntrans@3={intrans['player_intrans_at_3']}/{intrans['n_players']}"
        ),
    )


def render_benchmark(reports: Sequence[ExperimentReport], output_format: str = "table") -> str:
    """Model comparison with one row per dataset and one column per model kind."""
    _check_format(output_format)
    if output_format == "json":
        return to_json([report.to_dict() for report in reports])
    if not reports:
        return "No models were benchmarked\n"

    datasets = list(dict.fromkeys(report.dataset for report in reports))
    kinds = list(dict.fromkeys(report.kind for report in reports))
    cells = {(report.dataset, report.kind): accuracy_cell(report.mean, report.std) for report in reports}
    rows = [[dataset] + [cells.get((dataset, kind), "-") for kind in kinds] for dataset in datasets]
    return render_template(
        BENCHMARK_TEMPLATE,
        k=reports[0].k,
        columns=["Dataset"] + [kind.display_name for kind in kinds],
        rows=rows,
    )
