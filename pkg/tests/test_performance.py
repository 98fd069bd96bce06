"""Performance tests for localmds algorithm latency."""

from __future__ import annotations

import time
from fractions import Fraction

from localmds import generators
from localmds.clustering import cluster, expansion_preset
from localmds.lenzen import genus_algorithm, lenzen_program, modified_lenzen, run_distributed
from localmds.logic import build_phi_D, defined_set
from localmds.oracle import exact_mds

MAX_DIRECT_MS = 5000
MAX_SIMULATED_MS = 20000
MAX_CLUSTER_MS = 5000
MAX_ORACLE_MS = 10000
MAX_FO_MS = 10000
MAX_GENUS_MS = 120000


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000


class TestAlgorithmPerformance:
    """Timing guards on moderately sized inputs."""

    def test_direct_lenzen_on_large_grid(self) -> None:
        g = generators.grid(20, 20)
        start = time.perf_counter()
        modified_lenzen(g, 3)
        elapsed = _elapsed_ms(start)
        assert elapsed < MAX_DIRECT_MS, f"modified_lenzen took {elapsed:.1f}ms (limit: {MAX_DIRECT_MS}ms)"

    def test_simulated_lenzen(self) -> None:
        g = generators.random_planar(40, seed=3)
        start = time.perf_counter()
        run_distributed(g, lenzen_program(3))
        elapsed = _elapsed_ms(start)
        assert elapsed < MAX_SIMULATED_MS, f"simulation took {elapsed:.1f}ms (limit: {MAX_SIMULATED_MS}ms)"

    def test_cluster_grid(self) -> None:
        g = generators.grid(20, 20)
        start = time.perf_counter()
        cluster(g, Fraction(1, 2), expansion_preset("planar"))
        elapsed = _elapsed_ms(start)
        assert elapsed < MAX_CLUSTER_MS, f"cluster took {elapsed:.1f}ms (limit: {MAX_CLUSTER_MS}ms)"

    def test_oracle_at_cap(self) -> None:
        g = generators.grid(5, 5)
        start = time.perf_counter()
        exact_mds(g)
        elapsed = _elapsed_ms(start)
        assert elapsed < MAX_ORACLE_MS, f"exact_mds took {elapsed:.1f}ms (limit: {MAX_ORACLE_MS}ms)"

    def test_planned_phi_d(self) -> None:
        g = generators.grid(4, 4)
        start = time.perf_counter()
        defined_set(g, build_phi_D(1))
        elapsed = _elapsed_ms(start)
        assert elapsed < MAX_FO_MS, f"defined_set took {elapsed:.1f}ms (limit: {MAX_FO_MS}ms)"

    def test_genus_algorithm_on_torus(self) -> None:
        start = time.perf_counter()
        for w, h in [(3, 3), (4, 4), (3, 8)]:
            genus_algorithm(generators.torus_grid(w, h), 1)
        elapsed = _elapsed_ms(start)
        assert elapsed < MAX_GENUS_MS, f"genus_algorithm took {elapsed:.1f}ms (limit: {MAX_GENUS_MS}ms)"
