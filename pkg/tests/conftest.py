"""Shared fixtures for the localmds test suite."""

from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Iterator

import pytest

from localmds import generators
from localmds.graph import Graph
from localmds.lib import config
from localmds.lib.graph_io import write_graph


SRC_DIR = Path(__file__).resolve().parent.parent / "src"


@pytest.fixture(autouse=True)
def _fresh_config(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Drop the cached defaults and the env overrides around every test."""
    monkeypatch.delenv("LOCALMDS_ORACLE_CAP", raising=False)
    monkeypatch.delenv("LOCALMDS_LOG_DIR", raising=False)
    config.reset()
    yield
    config.reset()


@pytest.fixture()
def cli_env() -> dict[str, str]:
    """Environment for ``python -m localmds.cli.main`` subprocesses."""
    env = dict(os.environ)
    env.pop("LOCALMDS_LOG_DIR", None)
    env.pop("LOCALMDS_ORACLE_CAP", None)
    env["PYTHONPATH"] = os.pathsep.join(
        p for p in (str(SRC_DIR), env.get("PYTHONPATH", "")) if p
    )
    return env


@pytest.fixture()
def python() -> str:
    return sys.executable


# ---------------------------------------------------------------------------
# Small graphs
# ---------------------------------------------------------------------------


@pytest.fixture()
def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture()
def p3() -> Graph:
    """Path 0-1-2."""
    return generators.path(3)


@pytest.fixture()
def p5() -> Graph:
    return generators.path(5)


@pytest.fixture()
def claw() -> Graph:
    """K_{1,3}: centre 0, leaves 1..3."""
    return generators.star(3)


@pytest.fixture()
def star7() -> Graph:
    return generators.star(7)


@pytest.fixture()
def c6() -> Graph:
    return generators.cycle(6)


@pytest.fixture()
def k33() -> Graph:
    return generators.complete_bipartite(3, 3)


@pytest.fixture()
def grid3() -> Graph:
    return generators.grid(3, 3)


@pytest.fixture()
def grid5() -> Graph:
    return generators.grid(5, 5)


@pytest.fixture()
def grid6() -> Graph:
    return generators.grid(6, 6)


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


@pytest.fixture()
def c6_file(tmp_path: Path, c6: Graph) -> Path:
    """C6 written in the text format."""
    path = tmp_path / "c6.g"
    write_graph(c6, path)
    return path


@pytest.fixture()
def grid6_file(tmp_path: Path, grid6: Graph) -> Path:
    path = tmp_path / "grid6.g"
    write_graph(grid6, path)
    return path
