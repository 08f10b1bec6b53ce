from __future__ import annotations

import pytest

from polyudg.graph_builder import EdgeMode, build_graph, minkowski_sum, orbit_closure
from polyudg.polygon_metric import Metric
from polyudg.seeds import seed_list
from polyudg.vector_catalog import catalog

_cache: dict = {}


def _memo(key, make):
    if key not in _cache:
        _cache[key] = make()
    return _cache[key]


def sum_vertices(metric: Metric):
    U = catalog(metric).U
    return _memo(("sum", metric), lambda: minkowski_sum(U, U))


def sum_graph(metric: Metric, mode: EdgeMode):
    return _memo(("sumg", metric, mode), lambda: build_graph(sum_vertices(metric), mode))


def seeded_graph(name: str):
    return _memo(("seeded", name), lambda: build_graph(orbit_closure(seed_list(name)), EdgeMode.FULL, provenance=name))


@pytest.fixture(scope="session")
def g120():
    return seeded_graph("g120")


@pytest.fixture(scope="session")
def g121():
    return seeded_graph("g121")


@pytest.fixture(scope="session")
def g295():
    return seeded_graph("g295")


# Lines recorded by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda ln: ln.split()[1]):
            terminalreporter.write_line(line)
