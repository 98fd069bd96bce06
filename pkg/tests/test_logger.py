"""Unit tests for localmds.lib.logger run telemetry."""

from __future__ import annotations

import json

from localmds.lib.logger import graph_hash, log_run


def _log(tmp_path, **overrides) -> str:
    args = dict(
        log_dir=str(tmp_path / "logs"),
        algorithm="lenzen",
        params={"c": 3, "t": 3},
        n=4,
        m=3,
        graph_text="p 4 3\ne 0 1\ne 1 2\ne 2 3\n",
        size=2,
        rounds=6,
        wall_ms=1,
    )
    args.update(overrides)
    return log_run(**args)


class TestLogRun:
    """JSONL entries."""

    def test_disabled_with_empty_dir(self) -> None:
        assert log_run("", "lenzen", {}, 0, 0, "", 0, None, 0) is None

    def test_writes_one_line(self, tmp_path) -> None:
        path = _log(tmp_path)
        lines = open(path, encoding="utf-8").read().splitlines()
        assert len(lines) == 1
        entry = json.loads(lines[0])
        assert entry["algorithm"] == "lenzen"
        assert entry["params"] == {"c": "3", "t": "3"}
        assert entry["status"] == "ok"
        assert entry["event"] == "run"
        assert entry["timestamp"].endswith("Z")

    def test_appends(self, tmp_path) -> None:
        _log(tmp_path)
        path = _log(tmp_path, status="violation", event="verify")
        entries = [json.loads(line) for line in open(path, encoding="utf-8")]
        assert [e["status"] for e in entries] == ["ok", "violation"]

    def test_compact_separators(self, tmp_path) -> None:
        line = open(_log(tmp_path), encoding="utf-8").readline()
        assert ", " not in line


class TestGraphHash:
    """Truncated digest."""

    def test_prefix_and_length(self) -> None:
        digest = graph_hash("p 1 0\n")
        assert digest.startswith("sha256:")
        assert len(digest) == len("sha256:") + 12

    def test_deterministic(self) -> None:
        assert graph_hash("p 2 1\ne 0 1\n") == graph_hash("p 2 1\ne 0 1\n")
        assert graph_hash("p 2 0\n") != graph_hash("p 2 1\ne 0 1\n")
