import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nzcgraph import formulas as f
from nzcgraph.errors import BudgetExceeded
from nzcgraph.graph import build_graph
from nzcgraph.hamilton import (
    HamiltonMethod,
    HamiltonStatus,
    exhaustive_hamiltonian,
    find_hamiltonian_cycle,
    hamiltonian_cycle_of,
    validate_cycle,
)
from nzcgraph.space import GraphParams

from conftest import bitsets_from_networkx, grid, grid_ids

P = GraphParams


def permutation_has_cycle(h: nx.Graph) -> bool:
    """Try every cyclic order with node 0 first; only for a handful of nodes."""
    nodes = list(h.nodes)
    if len(nodes) < 3:
        return False
    first, rest = nodes[0], nodes[1:]
    for perm in itertools.permutations(rest):
        order = (first, *perm)
        if all(h.has_edge(order[i - 1], order[i]) for i in range(len(order))):
            return True
    return False


def is_cycle_in(h: nx.Graph, cycle) -> bool:
    return sorted(cycle) == sorted(h.nodes) and all(
        h.has_edge(cycle[i - 1], cycle[i]) for i in range(len(cycle))
    )


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2)])
def test_tiny_graphs_are_not_hamiltonian(q, n):
    r = find_hamiltonian_cycle(build_graph(P(q, n)))
    assert r.status is HamiltonStatus.NOT_HAMILTONIAN
    assert r.method is HamiltonMethod.EXHAUSTIVE
    assert not f.hamiltonian_formula(P(q, n))


def test_three_two_has_an_eight_cycle():
    g = build_graph(P(3, 2))
    r = find_hamiltonian_cycle(g)
    assert r.status is HamiltonStatus.CYCLE and len(r.cycle) == 8
    assert validate_cycle(g, r.cycle)


def test_two_three_has_a_seven_cycle():
    g = build_graph(P(2, 3))
    r = find_hamiltonian_cycle(g)
    assert len(r.cycle) == 7 and validate_cycle(g, r.cycle)


@pytest.mark.parametrize("p", grid(4096), ids=grid_ids(grid(4096)))
def test_grid_cycles_validate(p):
    g = build_graph(p)
    r = find_hamiltonian_cycle(g, seed=3)
    expected = f.hamiltonian_formula(p)
    if p.q == 2 and p.n <= 2:
        assert r.status is HamiltonStatus.NOT_HAMILTONIAN and not expected
    else:
        assert r.status is HamiltonStatus.CYCLE and expected
        assert validate_cycle(g, r.cycle)


def test_validate_cycle_rejects_bad_input():
    g = build_graph(P(2, 3))
    good = list(find_hamiltonian_cycle(g).cycle)
    assert validate_cycle(g, good)
    assert validate_cycle(g, good[::-1])
    assert validate_cycle(g, good[2:] + good[:2])
    assert not validate_cycle(g, good[:-1])
    assert not validate_cycle(g, good + [good[0]])
    assert not validate_cycle(g, [1, 2, 3, 4, 5, 6, 7])  # 1 and 2 have disjoint supports
    assert not validate_cycle(g, [v if v != 7 else 8 for v in good])


def test_exhaustive_matches_permutations_on_small_grid():
    for p in grid(9):
        g = build_graph(p)
        h = nx.Graph(list(g.edges()))
        h.add_nodes_from(range(1, g.vertex_count + 1))
        r = exhaustive_hamiltonian(g)
        # K2 at (3,1) counts as the closed walk 1-2-1
        expected = permutation_has_cycle(h) or (g.vertex_count == 2 and h.number_of_edges() == 1)
        assert (r.status is HamiltonStatus.CYCLE) == expected


def test_exhaustive_two_four():
    g = build_graph(P(2, 4))
    r = exhaustive_hamiltonian(g)
    assert r.status is HamiltonStatus.CYCLE and validate_cycle(g, r.cycle)


def test_exhaustive_budget():
    with pytest.raises(BudgetExceeded):
        exhaustive_hamiltonian(build_graph(P(2, 5)))


@pytest.mark.parametrize("seed", [0, 1, 7, 12345])
def test_same_seed_same_cycle(seed):
    g = build_graph(P(3, 3))
    assert find_hamiltonian_cycle(g, seed=seed) == find_hamiltonian_cycle(g, seed=seed)


def test_petersen_is_certified_non_hamiltonian():
    r = hamiltonian_cycle_of(bitsets_from_networkx(nx.petersen_graph()), budget=None)
    assert r.status is HamiltonStatus.NOT_HAMILTONIAN
    assert r.method is HamiltonMethod.EXHAUSTIVE


def test_budget_exhaustion_is_unknown():
    # Petersen defeats rotation-extension; two backtracking nodes decide nothing
    r = hamiltonian_cycle_of(bitsets_from_networkx(nx.petersen_graph()), budget=2)
    assert r.status is HamiltonStatus.UNKNOWN


def test_single_vertex_and_edge():
    assert hamiltonian_cycle_of([0]).status is HamiltonStatus.NOT_HAMILTONIAN
    assert hamiltonian_cycle_of([]).status is HamiltonStatus.NOT_HAMILTONIAN
    assert hamiltonian_cycle_of([0, 0], budget=None).status is HamiltonStatus.NOT_HAMILTONIAN


def test_complete_graph_on_two_vertices():
    g = build_graph(P(3, 1))
    r = find_hamiltonian_cycle(g)
    assert r.status is HamiltonStatus.CYCLE and validate_cycle(g, r.cycle)
    assert sorted(r.cycle) == [1, 2]


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 8), st.floats(0.2, 0.9), st.integers(0, 10**6))
def test_generic_search_matches_permutations(nv, density, seed):
    h = nx.gnp_random_graph(nv, density, seed=seed)
    r = hamiltonian_cycle_of(bitsets_from_networkx(h), seed=seed, budget=None)
    assert (r.status is HamiltonStatus.CYCLE) == permutation_has_cycle(h)
    if r.status is HamiltonStatus.CYCLE:
        assert is_cycle_in(h, r.cycle)


def test_generic_search_on_larger_random_graphs():
    rng = random.Random(5)
    for _ in range(60):
        nv = rng.randint(10, 40)
        h = nx.gnp_random_graph(nv, rng.uniform(0.15, 0.8), seed=rng.randrange(10**9))
        r = hamiltonian_cycle_of(bitsets_from_networkx(h), seed=rng.randrange(100))
        if r.status is HamiltonStatus.CYCLE:
            assert is_cycle_in(h, r.cycle)
        if min(d for _, d in h.degree) * 2 >= nv:
            assert r.status is HamiltonStatus.CYCLE
        if not nx.is_biconnected(h):
            assert r.status is not HamiltonStatus.CYCLE
