"""CSV / JSON persistence with a fixed numeric format.

CSV cells carry 12 significant digits; JSON reports keep full float
precision and stable (insertion) key order.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

__all__ = ["format_value", "write_csv", "read_csv", "write_json"]


def format_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return ""
    return str(v)


def write_csv(path: str | Path, header: list[str], rows: list[list]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return p


def read_csv(path: str | Path) -> tuple[list[str], list[dict]]:
    with Path(path).open("r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [dict(zip(header, row)) for row in reader]
    return header, rows


def write_json(path: str | Path, record: dict) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")
    return p
