"""Shared independent oracles for the test suite.

These deliberately avoid the library's numpy paths and search code: plain
loops over sets, enumerating every coloring.
"""

from itertools import product

import pytest

ACCEPTANCE_LOG: list[str] = []


def naive_missing(edges, assignment, num_colors):
    out = []
    for i, e in enumerate(edges):
        present = {assignment[v] for v in e}
        for q in range(num_colors):
            if q not in present:
                out.append((i, q))
    return out


def naive_panchromatic(edges, assignment, num_colors):
    return all(len({assignment[v] for v in e}) == num_colors for e in edges) or (
        not edges
    )


def brute_force_colorable(num_vertices, edges, r):
    """True iff some r-coloring makes every edge see all r colors."""
    if not edges:
        return True
    for a in product(range(r), repeat=num_vertices):
        if all(len({a[v] for v in e}) == r for e in edges):
            return True
    return False


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
