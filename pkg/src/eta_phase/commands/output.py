"""Rendering of command reports as human text, JSON or CSV."""

import csv
import io
from typing import Any, TextIO

from pydantic import BaseModel


def _format_value(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def render_human(report: BaseModel, indent: str = "") -> str:
    lines: list[str] = []
    headline = getattr(report, "headline", None)
    if callable(headline) and not indent:
        lines.append(headline())
    for name, value in report:
        if isinstance(value, BaseModel):
            lines.append(f"{indent}{name}:")
            lines.append(render_human(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], BaseModel):
            lines.append(f"{indent}{name}:")
            lines.append(_table(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{indent}{name}:")
            lines.extend(f"{indent}  " + "  ".join(f"{v: .12e}" for v in row) for row in value)
        else:
            lines.append(f"{indent}{name}: {_format_value(value)}")
    return "\n".join(lines)


def _table(rows: list[BaseModel], indent: str) -> str:
    header = list(type(rows[0]).model_fields)
    cells = [[_format_value(getattr(row, name)) for name in header] for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    lines = [indent + "  ".join(h.ljust(w) for h, w in zip(header, widths, strict=True))]
    lines.extend(
        indent + "  ".join(c.ljust(w) for c, w in zip(cell, widths, strict=True)) for cell in cells
    )
    return "\n".join(lines)


def render_csv(report: BaseModel) -> str:
    """Tabular reports emit their rows; others a single header/value row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    rows = getattr(report, "rows", None)
    if isinstance(rows, list) and rows and isinstance(rows[0], BaseModel):
        header = list(type(rows[0]).model_fields)
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if getattr(row, h) is None else getattr(row, h) for h in header])
        return buffer.getvalue()

    flat = {
        name: value
        for name, value in report
        if not isinstance(value, (BaseModel, list)) or (value and not isinstance(value[0], list))
    }
    writer.writerow(list(flat))
    writer.writerow(
        [";".join(map(str, v)) if isinstance(v, list) else ("" if v is None else v) for v in flat.values()]
    )
    return buffer.getvalue()


def emit(report: BaseModel, output_format: str, stream: TextIO) -> None:
    if output_format == "json":
        stream.write(report.model_dump_json() + "\n")
    elif output_format == "csv":
        stream.write(render_csv(report))
    else:
        stream.write(render_human(report) + "\n")
