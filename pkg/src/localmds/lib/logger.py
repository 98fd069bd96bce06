"""logger — JSONL run telemetry for algorithm invocations.

Every CLI run of an algorithm appends one JSON line to ``runs.jsonl`` inside
the configured log directory.  An entry records the algorithm, its
parameters, the graph size, a truncated SHA-256 of the graph text, the
resulting set size, the round count and the wall time.  An empty log
directory disables logging entirely.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os
from typing import Any, Mapping, Optional

from localmds.lib import config


def _timestamp() -> str:
    """Return the current UTC time in ISO format with a ``Z`` suffix."""
    return (
        datetime.datetime.now(datetime.timezone.utc)
        .isoformat()
        .replace(
            config.get_str("formatting.utc_offset_source"),
            config.get_str("formatting.utc_offset_replacement"),
        )
    )


def graph_hash(graph_text: str) -> str:
    """Return the truncated, prefixed SHA-256 digest of serialized graph text."""
    digest = hashlib.sha256(graph_text.encode()).hexdigest()
    length = config.get_int("defaults.hash_truncation_length")
    return config.get_str("formatting.hash_prefix") + digest[:length]


def log_run(
    log_dir: str,
    algorithm: str,
    params: Mapping[str, Any],
    n: int,
    m: int,
    graph_text: str,
    size: int,
    rounds: Optional[int],
    wall_ms: int,
    status: str = "ok",
    event: str = "run",
) -> Optional[str]:
    """Append a JSONL entry describing one algorithm run.

    Args:
        log_dir: Directory to write into; empty disables logging.
        algorithm: Algorithm name as given on the command line.
        params: Algorithm parameters (rendered with ``str``).
        n: Vertex count of the input graph.
        m: Edge count of the input graph.
        graph_text: Serialized input graph, hashed for the entry.
        size: Size of the produced set.
        rounds: LOCAL rounds, or None when not applicable.
        wall_ms: Wall-clock duration in milliseconds.
        status: 'ok' or 'violation'.
        event: Subcommand that produced the entry.

    Returns:
        The log file path, or None when logging is disabled.
    """
    if not log_dir:
        return None
    os.makedirs(log_dir, exist_ok=True)
    log_path = os.path.join(log_dir, config.get_str("filenames.run_log"))
    separators = tuple(config.get_list("formatting.json_separators"))

    entry: dict[str, Any] = {
        "timestamp": _timestamp(),
        "event": event,
        "algorithm": algorithm,
        "params": {key: str(value) for key, value in sorted(params.items())},
        "n": n,
        "m": m,
        "graph_hash": graph_hash(graph_text),
        "status": status,
        "size": size,
        "rounds": rounds,
        "wall_ms": wall_ms,
    }

    with open(log_path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(entry, separators=separators) + "\n")
    return log_path
