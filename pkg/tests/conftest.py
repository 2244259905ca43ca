"""Shared fixtures: the checked-in example digraphs and random-graph helpers."""

from __future__ import annotations

from pathlib import Path

import pytest

from robsen.digraph import StateDigraph, parse_edge_list
from robsen.netgen import splitmix64

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

_CRITERION_RESULTS: dict[int, list[tuple[str, bool]]] = {}


def load_fixture(name: str) -> StateDigraph:
    return parse_edge_list((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def fig1() -> StateDigraph:
    return load_fixture("fig1.sdg")


@pytest.fixture(scope="session")
def fig2() -> StateDigraph:
    return load_fixture("fig2.sdg")


@pytest.fixture(scope="session")
def fig3() -> StateDigraph:
    return load_fixture("fig3.sdg")


@pytest.fixture(scope="session")
def fig4() -> StateDigraph:
    return load_fixture("fig4.sdg")


@pytest.fixture(scope="session")
def fig5() -> StateDigraph:
    return load_fixture("fig5.sdg")


class RandomGraphs:
    """Deterministic stream of random digraphs for property tests."""

    def __init__(self, seed: int):
        self._rng = splitmix64(seed)

    def integer(self, lo: int, hi: int) -> int:
        return lo + next(self._rng) % (hi - lo + 1)

    def chance(self, permille: int) -> bool:
        return next(self._rng) % 1000 < permille

    def digraph(self, n_lo: int, n_hi: int, permille: int = 280,
                self_loops: bool = True) -> StateDigraph:
        n = self.integer(n_lo, n_hi)
        edges = set()
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                if (u != v or self_loops) and self.chance(permille):
                    edges.add((u, v))
        return StateDigraph.build(n, edges)

    def subset(self, n: int, permille: int = 500) -> frozenset[int]:
        return frozenset(v for v in range(1, n + 1) if self.chance(permille))


@pytest.fixture()
def graphs() -> RandomGraphs:
    return RandomGraphs(seed=20260810)


def record_criterion(number: int, label: str, ok: bool) -> None:
    _CRITERION_RESULTS.setdefault(number, []).append((label, ok))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERION_RESULTS):
        checks = _CRITERION_RESULTS[number]
        ok = all(flag for _, flag in checks)
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}")
        if not ok:
            for label, flag in checks:
                if not flag:
                    terminalreporter.write_line(f"  - failed: {label}")
