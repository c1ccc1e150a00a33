"""Row-table serialization (CSV with 12 significant digits, JSON with a config echo)."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.12g}"
    return str(value)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in header])
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def to_json(rows: list[dict], config: dict | None = None) -> str:
    doc = {"config": config or {}, "rows": [{k: _jsonable(v) for k, v in r.items()} for r in rows]}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def render(rows: list[dict], fmt: str, config: dict | None = None) -> str:
    return to_json(rows, config) if fmt == "json" else to_csv(rows)


def _parse_cell(text: str):
    try:
        number = float(text)
    except ValueError:
        return text
    if text.lstrip("-").isdigit():
        return int(text)
    return number


def read_rows(path) -> list[dict]:
    """Load rows written by :func:`to_csv` or :func:`to_json`."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        rows = json.loads(text)["rows"]
        return [{k: (math.nan if v is None else v) for k, v in r.items()} for r in rows]
    reader = csv.DictReader(io.StringIO(text))
    return [{k: _parse_cell(v) for k, v in r.items()} for r in reader]
