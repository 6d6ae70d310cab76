"""CSV / JSON writers for experiment tables and matrix dumps."""

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.utils.logger import get_logger

logger = get_logger("gaussinterp")


def format_cell(value: Any) -> str:
    """Render one CSV cell: floats with 17 significant digits, booleans as true/false."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def make_json_safe(obj: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return make_json_safe(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, Path):
        return str(obj)
    return obj


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]],
               comments: Sequence[str] = ()) -> str:
    buffer = io.StringIO()
    for line in comments:
        buffer.write(f"# {line}\r\n")
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def render_json(config: Dict[str, Any], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    document = {
        "config": make_json_safe(config),
        "rows": [make_json_safe(dict(zip(header, row))) for row in rows],
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_text(text: str, path: Optional[str]) -> None:
    """Write to ``path`` (parents created), or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", newline="", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"Wrote {target}")


def write_table(header: Sequence[str], rows: List[Sequence[Any]], path: Optional[str],
                fmt: str = "csv", config: Optional[Dict[str, Any]] = None,
                comments: Sequence[str] = ()) -> None:
    """Write one table as CSV (config echoed in # lines) or as a {config, rows} JSON document."""
    config = config or {}
    if fmt == "json":
        text = render_json(config, header, rows)
    else:
        echo = [f"config: {json.dumps(make_json_safe(config), sort_keys=True)}"] if config else []
        text = render_csv(header, rows, list(echo) + list(comments))
    write_text(text, path)


def matrix_rows(matrix: np.ndarray) -> List[List[float]]:
    """Row-major rows of a 1D or 2D array."""
    arr = np.atleast_2d(np.asarray(matrix, dtype=float))
    if np.ndim(matrix) == 1:
        arr = arr.T
    return [list(map(float, row)) for row in arr]


def write_matrix_csv(matrix: np.ndarray, path: Optional[str], comments: Sequence[str] = ()) -> None:
    """Dump a matrix (or a vector as one column) with 17 significant digits."""
    rows = matrix_rows(matrix)
    header = [f"c{j}" for j in range(len(rows[0]))] if rows else []
    write_text(render_csv(header, rows, comments), path)
