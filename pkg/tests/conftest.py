from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gtkcenter.core import Graph
from gtkcenter.gridtiling import GTInstance
from gtkcenter.reduction import build

# ---------------------------------------------------------------- instances


def t1_instance() -> GTInstance:
    return GTInstance.from_cells(1, 2, [[[(1, 1), (2, 2)]]])


def t2_instance() -> GTInstance:
    return GTInstance.from_cells(1, 2, [[[(1, 1), (2, 1), (2, 2)]]])


def grid_instance() -> GTInstance:
    """chi = 2, n = 2, every cell {(1,1), (2,2)}; b-covered, so it builds directly."""
    return GTInstance.from_cells(2, 2, [[[(1, 1), (2, 2)]] * 2] * 2)


def unsolvable_instance() -> GTInstance:
    """Needs 2 <= 1 down the first column."""
    return GTInstance.from_cells(2, 2, [[[(2, 1)], [(2, 2)]], [[(1, 1)], [(2, 2)]]])


@pytest.fixture(scope="session")
def t1():
    return build(t1_instance())


@pytest.fixture(scope="session")
def t2():
    return build(t2_instance())


@pytest.fixture(scope="session")
def grid():
    return build(grid_instance())


# ---------------------------------------------------------------- small graphs


def path_graph(k: int, length=1) -> Graph:
    return Graph(range(k), [(v, v + 1, length) for v in range(k - 1)])


def cycle_graph(k: int, length=1) -> Graph:
    return Graph(range(k), [(v, (v + 1) % k, length) for v in range(k)])


def star_graph(rays: int) -> Graph:
    return Graph(range(rays + 1), [(0, v, 1) for v in range(1, rays + 1)])


def random_graph(rng: random.Random, size: int, extra: int, denominators=(1, 2, 3)) -> Graph:
    """Connected graph: a random spanning tree plus ``extra`` chords, with
    small rational lengths."""
    edges = {}

    def length():
        return Fraction(rng.randint(1, 6), rng.choice(denominators))

    for v in range(1, size):
        edges[(rng.randrange(v), v)] = length()
    for _ in range(extra):
        u, v = sorted(rng.sample(range(size), 2))
        edges.setdefault((u, v), length())
    return Graph(range(size), [(u, v, w) for (u, v), w in edges.items()])


# ---------------------------------------------------------------- acceptance summary

_ACCEPTANCE: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    key, title = str(marker.args[0]), marker.args[1]
    details = [value for name, value in item.user_properties if name == "detail"]
    passed = call.excinfo is None
    _ACCEPTANCE.setdefault(key, [title, True, []])
    entry = _ACCEPTANCE[key]
    entry[1] = entry[1] and passed
    entry[2].extend(details)
    if not passed:
        entry[2].append(f"{item.name} failed")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        title, passed, details = _ACCEPTANCE[key]
        status = "PASS" if passed else "FAIL"
        line = f"criterion {key} {status}: {title}"
        if details:
            line += " | " + "; ".join(details)
        terminalreporter.write_line(line)
