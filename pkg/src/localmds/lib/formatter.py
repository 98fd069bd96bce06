"""formatter — text, JSON and CSV rendering of results.

Text output is a single line of ``key=value`` pairs so that it can be
grepped; JSON output carries the same fields.  Booleans render as
``true``/``false``, rationals as ``p/q`` and vertex sets as sorted,
comma-separated ids.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional

from localmds.lib import config
from localmds.lib.models import ClusterPartition, MdsResult


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def format_value(value: Any) -> str:
    """Render one field value for text and CSV output."""
    if value is None:
        return config.get_str("csv.not_available")
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}{config.get_str('formats.rational_separator')}{value.denominator}"
    if isinstance(value, (set, frozenset)):
        return format_set(value)
    return str(value)


def format_set(vertices: Iterable[int]) -> str:
    return config.get_str("formatting.set_separator").join(str(v) for v in sorted(vertices))


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_value(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


def result_fields(result: MdsResult, **extra: Any) -> dict[str, Any]:
    """Summary fields of an MdsResult, followed by ``extra``."""
    labels = config.get_mapping("labels")
    fields: dict[str, Any] = {
        labels["size"]: len(result.dominating_set),
        labels["rounds"]: result.rounds_used,
        labels["phase1"]: len(result.phase1_set),
        labels["preprocessing"]: len(result.preprocessing_set),
        labels["phase2"]: len(result.phase2_set),
    }
    fields.update(extra)
    fields["set"] = result.dominating_set
    return fields


def cluster_fields(partition: ClusterPartition, epsilon: Fraction) -> dict[str, Any]:
    labels = config.get_mapping("labels")
    return {
        labels["clusters"]: len(partition.clusters),
        labels["radius_bound"]: partition.radius_bound,
        labels["crossing_weight"]: partition.crossing_weight,
        "epsilon": epsilon,
        "iterations": partition.iterations,
        "parts": [sorted(part) for part in partition.clusters],
    }


def render(fields: Mapping[str, Any], output_format: Optional[str] = None) -> str:
    """Render a record as one ``key=value`` line or as indented JSON.

    Args:
        fields: Ordered record.
        output_format: 'text' or 'json'; defaults to ``defaults.output_format``.
    """
    chosen = output_format or config.get_str("defaults.output_format")
    if chosen == "json":
        return json.dumps(_jsonable(dict(fields)), indent=config.get_int("defaults.json_indent"))
    parts = []
    for key, value in fields.items():
        if isinstance(value, list):
            value = "|".join(format_set(v) for v in value)
        parts.append(f"{key}={format_value(value)}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def csv_text(rows: Iterable[Mapping[str, Any]]) -> str:
    """Render sweep rows under the configured column list."""
    columns = config.get_list("csv.columns")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(col)) for col in columns])
    return buffer.getvalue()
