"""Result tables and their CSV / JSON serialization.

Numbers are written with 12 significant digits so identical runs give
byte-identical files.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

TOOL_NAME = "arrayeit"


def format_number(value: Any) -> str:
    """``format(x, ".12g")`` with negative zero written as 0."""
    if isinstance(value, bool | str):
        return str(value)
    if isinstance(value, int):
        return str(value)
    text = format(float(value), ".12g")
    return "0" if text == "-0" else text


def _json_value(value: Any) -> Any:
    if isinstance(value, bool | str | int):
        return value
    return float(format_number(value))


@dataclass
class ResultTable:
    """Columns, rows and summary lines for one run."""

    mode: str
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(list(values))

    def column(self, name: str) -> list[Any]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _summary_text(value: Any) -> str:
    if isinstance(value, list | tuple):
        return " ".join(format_number(v) for v in value)
    return format_number(value)


def render_csv(table: ResultTable, *, version: str, config_echo: str) -> str:
    lines = [
        f"# tool: {TOOL_NAME}",
        f"# version: {version}",
        f"# mode: {table.mode}",
        f"# config: {config_echo}",
    ]
    lines += [f"# {key}: {_summary_text(value)}" for key, value in table.summary.items()]
    lines.append(",".join(table.columns))
    lines += [",".join(format_number(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def render_json(table: ResultTable, *, version: str, config_echo: str) -> str:
    summary = {
        key: [_json_value(v) for v in value] if isinstance(value, list | tuple) else _json_value(value)
        for key, value in table.summary.items()
    }
    document = {
        "tool": TOOL_NAME,
        "version": version,
        "mode": table.mode,
        "config": json.loads(config_echo),
        "summary": summary,
        "columns": table.columns,
        "rows": [[_json_value(v) for v in row] for row in table.rows],
    }
    return json.dumps(document, indent=2) + "\n"


def render(table: ResultTable, fmt: str, *, version: str, config_echo: str) -> str:
    if fmt == "json":
        return render_json(table, version=version, config_echo=config_echo)
    return render_csv(table, version=version, config_echo=config_echo)


def write_atomic(path: str | Path, text: str) -> Path:
    """Write text via a temp file in the target directory and os.replace.

    The temp file is removed if anything fails, so no partial output is left.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.info("wrote %s", path)
    return path
