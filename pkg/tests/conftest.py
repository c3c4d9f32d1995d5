import itertools

import networkx as nx
import pytest

from nzcgraph.space import GraphParams, validate_params

GRID_Q = (2, 3, 4, 5, 7, 8, 9)


def grid(max_vertices: int = 4096) -> list[GraphParams]:
    out = []
    for q in GRID_Q:
        n = 1
        while q**n - 1 <= max_vertices:
            out.append(validate_params(q, n))
            n += 1
    return out


def grid_ids(points) -> list[str]:
    return [f"q{p.q}n{p.n}" for p in points]


def coeff_tuples(p: GraphParams):
    """Every non-null coefficient vector in id order, built without the package codec."""
    out = []
    for vid in range(1, p.q**p.n):
        digits, x = [], vid
        for _ in range(p.n):
            x, d = divmod(x, p.q)
            digits.append(d)
        out.append(tuple(digits))
    return out


def reference_graph(p: GraphParams) -> nx.Graph:
    """Adjacency straight from the definition: a shared non-zero coordinate."""
    vecs = coeff_tuples(p)
    g = nx.Graph()
    g.add_nodes_from(range(1, len(vecs) + 1))
    for (i, a), (j, b) in itertools.combinations(enumerate(vecs, start=1), 2):
        if any(x and y for x, y in zip(a, b)):
            g.add_edge(i, j)
    return g


def to_networkx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(1, g.vertex_count + 1))
    h.add_edges_from(g.edges())
    return h


def bitsets_from_networkx(h: nx.Graph) -> list[int]:
    """Row bitsets of a graph whose nodes are 0..n-1."""
    return [sum(1 << u for u in h[v]) for v in range(h.number_of_nodes())]


@pytest.fixture(scope="session")
def small_grid():
    return grid(127)


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture
def criterion(request):
    """Record one ``PASS/FAIL criterion N: ...`` line and print it."""

    def record(number: int, ok: bool, text: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        request.config._criterion_lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
