"""CSV serialization of study reports and per-node field dumps.

Floats are printed with repr(), i.e. the shortest decimal that round-trips,
and files always use LF line endings, so a given configuration produces
byte-identical output on every run and platform.
"""

from __future__ import annotations

import numpy as np

from .analysis import Method, StudyConfig, StudyReport, field_tables
from .weighting import WEIGHT_LABELS

CSV_HEADER = (
    "function,method,weight,quantity,n,dx,dr_frac,r_frac,seed,"
    "include_boundary,nodes_used,rms"
)

FIELD_DUMP_HEADER = (
    "method,x,y,status,fx,fy,fxx,fxy,fyy,"
    "exact_fx,exact_fy,exact_fxx,exact_fxy,exact_fyy"
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _method_weight(method: Method, config: StudyConfig) -> str:
    if method == Method.DDINW:
        return WEIGHT_LABELS[config.weight]
    return "none"  # ddin is the unweighted variant; fd has no weights at all


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def csv_lines(report: StudyReport) -> list[str]:
    """All CSV lines (header first), sorted by (method, quantity, n)."""
    config = report.config
    common = {
        "function": config.function.name,
        "dr_frac": _fmt(config.dr_frac),
        "r_frac": _fmt(config.r_frac),
        "seed": str(config.seed),
        "include_boundary": _bool_str(config.include_boundary),
    }

    rows = []
    for cell in report.cells:
        rows.append(
            (
                (cell.method.value, cell.quantity, 0, cell.n),
                [
                    common["function"],
                    cell.method.value,
                    _method_weight(cell.method, config),
                    cell.quantity,
                    str(cell.n),
                    _fmt(cell.dx),
                    common["dr_frac"],
                    common["r_frac"],
                    common["seed"],
                    common["include_boundary"],
                    str(cell.nodes_used),
                    _fmt(cell.rms),
                ],
            )
        )
    for fit in report.fits:
        rows.append(
            (
                (fit.method.value, fit.quantity, 1, 0),
                [
                    common["function"],
                    fit.method.value,
                    _method_weight(fit.method, config),
                    fit.quantity,
                    "slope",
                    "",
                    common["dr_frac"],
                    common["r_frac"],
                    common["seed"],
                    common["include_boundary"],
                    "",
                    _fmt(fit.slope),
                ],
            )
        )
    rows.sort(key=lambda r: r[0])
    return [CSV_HEADER] + [",".join(fields) for _, fields in rows]


def emit_csv(report: StudyReport, path) -> None:
    """Write the study report; see CSV_HEADER for the schema."""
    _write_lines(path, csv_lines(report))


def field_dump_lines(config: StudyConfig) -> list[str]:
    """Per-node numeric and exact jets at the first configured grid size."""
    lines = [FIELD_DUMP_HEADER]
    for method, points, df, exact in field_tables(config):
        for k in range(len(points)):
            fields = [method.value, _fmt(points[k, 0]), _fmt(points[k, 1])]
            fields.append(str(int(df.status[k])))
            fields.extend(_fmt(df.values[k, c]) for c in range(5))
            fields.extend(
                _fmt(exact[k, 1 + c]) for c in range(5)  # skip the f slot
            )
            lines.append(",".join(fields))
    return lines


def emit_field_dump(config: StudyConfig, path) -> None:
    _write_lines(path, field_dump_lines(config))


def _write_lines(path, lines: list[str]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
