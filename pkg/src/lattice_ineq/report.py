"""Report rows and their CSV / JSON serializations."""

import csv
import io
import json
import math
from dataclasses import dataclass, fields

COLUMNS = (
    "domain_id", "n", "N", "k", "theorem", "lhs", "rhs", "slack", "trivial",
    "degenerate_gap", "lambda_k", "lambda_k_plus_1", "rho_min", "rho_max",
    "lambda_k_vs_1_plus_4_over_n",
)


@dataclass(frozen=True)
class ReportRow:
    domain_id: str
    n: int
    N: int
    k: object  # int, or None on identity-suite summary rows
    theorem: str
    lhs: float
    rhs: float
    slack: float
    trivial: bool
    degenerate_gap: bool
    lambda_k: object
    lambda_k_plus_1: object
    rho_min: float
    rho_max: float
    lambda_k_vs_1_plus_4_over_n: object


assert tuple(f.name for f in fields(ReportRow)) == COLUMNS


def format_float(x):
    """17 significant digits: round-trips any double exactly."""
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_cell(getattr(row, c)) for c in COLUMNS])
    return buf.getvalue()


def _json_value(value):
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return format_float(value)
        return float(format_float(value))
    return value


def to_json(rows, meta):
    payload = {
        "meta": meta,
        "rows": [{c: _json_value(getattr(row, c)) for c in COLUMNS} for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=False, allow_nan=False) + "\n"
