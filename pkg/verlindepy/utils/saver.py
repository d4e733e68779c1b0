# verlindepy/utils/saver.py
"""
Output records and their JSON, CSV and Markdown renderings.
"""

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

logger = logging.getLogger(__name__)


@dataclass
class OutputRecord:
    """Everything one CLI command reports."""

    command: str
    inputs: Dict[str, Any]
    results: List[Dict[str, Any]] = field(default_factory=list)
    checks: Dict[str, str] = field(default_factory=dict)
    timing_ms: float = 0.0
    warnings: List[str] = field(default_factory=list)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_timing:
            data.pop("timing_ms")
        return data


def record_to_json(record: OutputRecord, include_timing: bool = True) -> str:
    """One UTF-8 JSON document; exact values are already strings."""
    return json.dumps(record.to_dict(include_timing), indent=2, ensure_ascii=False) + "\n"


def rows_to_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def rows_to_markdown(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    lines = [
        "| " + " | ".join(columns) + " |",
        "| " + " | ".join("---" for _ in columns) + " |",
    ]
    for row in rows:
        cells = [str(row.get(c, "")).replace("|", "\\|") for c in columns]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render(
    record: OutputRecord, fmt: str, columns: Optional[Sequence[str]] = None
) -> str:
    """
    Render a record in one of the output formats.

    CSV and Markdown show the result rows only; JSON carries the whole record.
    """
    if fmt == "json":
        return record_to_json(record)
    cols = list(columns) if columns else _columns_of(record.results)
    if fmt == "csv":
        return rows_to_csv(record.results, cols)
    if fmt == "md":
        return rows_to_markdown(record.results, cols)
    raise ValueError(f"Unsupported output format: {fmt}")


def _columns_of(rows: Sequence[Dict[str, Any]]) -> List[str]:
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def write_output(text: str, out: Optional[Union[str, Path]]) -> Optional[Path]:
    """
    Write text to ``out``; return None when no path was given.

    Raises:
        OSError: if the file cannot be written
    """
    if out is None:
        return None
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("wrote %s", path)
    return path
