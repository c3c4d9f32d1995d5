import pytest

from nzcgraph import formulas as f
from nzcgraph.cliques import (
    CliqueKind,
    build_family_clique,
    build_middle_clique,
    classify_all,
    classify_maximal_clique,
    clique_number_exact,
    count_alpha_in_clique,
    degeneracy_order,
    enumerate_maximal_cliques,
    is_maximal_clique,
    naive_maximal_cliques,
    support_closed_is_maximal_clique,
)
from nzcgraph.errors import (
    BadFamilyIndex,
    BudgetExceeded,
    EmptySet,
    NotMaximal,
    UnknownVertex,
    VerificationFailed,
)
from nzcgraph.graph import build_graph
from nzcgraph.space import GraphParams, id_of

from conftest import grid, grid_ids, to_networkx

P = GraphParams
TINY = grid(15)


def ids(p, *vectors):
    return {id_of(p, v) for v in vectors}


def test_family_clique_binary_three():
    p = P(2, 3)
    d = build_family_clique(p, 1, 1)
    assert d.kind is CliqueKind.FAMILY and (d.k, d.i) == (1, 1)
    assert d.members == ids(p, (1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1))


def test_family_clique_sizes():
    assert len(build_family_clique(P(3, 2), 1, 2).members) == 6
    assert len(build_family_clique(P(5, 1), 1, 1).members) == 4


def test_family_clique_with_k2_is_not_maximal():
    # the vertex (0,1,1,1) meets every member of M_{2,1} in dimension 4
    p = P(2, 4)
    d = build_family_clique(p, 2, 1, verify=False)
    assert len(d.members) == 7 == f.family_clique_size(p, 2)
    g = build_graph(p)
    assert not is_maximal_clique(g, d.members)
    assert is_maximal_clique(g, d.members | {id_of(p, (0, 1, 1, 1))})
    with pytest.raises(VerificationFailed, match="not maximal"):
        build_family_clique(p, 2, 1)


@pytest.mark.parametrize("q,n,k,i", [(2, 3, 2, 1), (2, 4, 1, 5), (2, 4, 0, 1), (3, 2, 1, 0)])
def test_family_clique_rejects_indices(q, n, k, i):
    with pytest.raises(BadFamilyIndex):
        build_family_clique(P(q, n), k, i)


@pytest.mark.parametrize("q,n,size", [(2, 3, 4), (3, 3, 20), (2, 5, 16), (5, 1, 4)])
def test_middle_clique(q, n, size):
    d = build_middle_clique(P(q, n))
    assert d.kind is CliqueKind.MIDDLE
    assert len(d.members) == size == f.middle_clique_size(P(q, n))


def test_middle_clique_degenerate_path():
    d = build_middle_clique(P(2, 2))
    assert d.members == {3}
    assert not is_maximal_clique(build_graph(P(2, 2)), d.members)


@pytest.mark.parametrize("q,n", [(3, 2), (2, 4), (3, 4)])
def test_middle_clique_not_maximal_for_even_dimension(q, n):
    with pytest.raises(VerificationFailed):
        build_middle_clique(P(q, n))
    assert len(build_middle_clique(P(q, n), verify=False).members) == f.middle_clique_size(P(q, n))


def test_is_maximal_clique_examples():
    g = build_graph(P(2, 2))
    assert not is_maximal_clique(g, {1})
    assert is_maximal_clique(g, {1, 3})
    assert not is_maximal_clique(g, {1, 2})
    g3 = build_graph(P(2, 3))
    assert is_maximal_clique(g3, build_family_clique(P(2, 3), 1, 1).members)


def test_is_maximal_clique_errors():
    g = build_graph(P(2, 2))
    with pytest.raises(EmptySet):
        is_maximal_clique(g, [])
    with pytest.raises(UnknownVertex):
        is_maximal_clique(g, [4])


def test_enumeration_small_cases():
    assert list(enumerate_maximal_cliques(build_graph(P(2, 2)))) == [(1, 3), (2, 3)]
    for q in (3, 5, 9):
        assert list(enumerate_maximal_cliques(build_graph(P(q, 1)))) == [tuple(range(1, q))]


@pytest.mark.parametrize("p", TINY, ids=grid_ids(TINY))
def test_enumeration_matches_naive_scan(p):
    g = build_graph(p)
    assert list(enumerate_maximal_cliques(g)) == naive_maximal_cliques(g)


@pytest.mark.parametrize("p", grid(127), ids=grid_ids(grid(127)))
def test_enumeration_matches_networkx(p):
    import networkx as nx

    g = build_graph(p)
    if g.vertex_count == 127:
        pytest.skip("1.4 million cliques; networkx too slow")
    expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(to_networkx(g)))
    assert list(enumerate_maximal_cliques(g)) == expected


def test_enumeration_order_is_lexicographic():
    got = list(enumerate_maximal_cliques(build_graph(P(2, 5))))
    assert got == sorted(got)
    assert len(got) == 81


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_maximal_cliques(build_graph(P(2, 8))))


def test_degeneracy_order_is_a_permutation():
    g = build_graph(P(3, 3))
    assert sorted(degeneracy_order(g)) == list(range(g.vertex_count))


def test_classify_examples():
    p = P(2, 3)
    g = build_graph(p)
    d = classify_maximal_clique(p, ids(p, (1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)), g)
    assert (d.kind, d.k, d.i) == (CliqueKind.FAMILY, 1, 1)
    d = classify_maximal_clique(p, ids(p, (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)), g)
    assert d.kind is CliqueKind.MIDDLE


def test_classify_rejects_non_maximal():
    with pytest.raises(NotMaximal):
        classify_maximal_clique(P(2, 3), {1, 3})


def test_unclassified_cliques_exist_in_dimension_four():
    p = P(2, 4)
    summary = classify_all(build_graph(p))
    assert summary.total == 12
    assert sorted(summary.family) == [(1, i) for i in range(1, 5)]
    assert summary.unclassified == 8
    assert summary.unclassified_by_k == {2: 8}
    (example, *_) = summary.examples
    d = classify_maximal_clique(p, example)
    assert d.kind is CliqueKind.UNCLASSIFIED and d.k == 2
    assert len(example) == 8


@pytest.mark.parametrize("p", [q for q in grid(127) if q.n <= 3], ids=grid_ids([q for q in grid(127) if q.n <= 3]))
def test_taxonomy_complete_up_to_dimension_three(p):
    s = classify_all(build_graph(p))
    assert s.unclassified == 0
    for (k, _), size in s.family.items():
        assert size == f.family_clique_size(p, k)
    for size in s.middle_sizes:
        assert size == f.middle_clique_size(p)


@pytest.mark.parametrize("q,n,omega", [(2, 3, 4), (3, 2, 6), (3, 3, 20), (2, 7, 64), (5, 3, 112)])
def test_clique_number_exact(q, n, omega):
    g = build_graph(P(q, n))
    assert clique_number_exact(g) == omega == f.clique_number(P(q, n))[0]


def test_clique_number_even_dimension_exceeds_closed_form():
    # a half-support layer through index 1 extends the middle set
    assert clique_number_exact(build_graph(P(3, 4))) == 60
    assert f.clique_number(P(3, 4))[0] == 54


def test_family_cliques_distinct():
    for p in grid(300):
        for k in range(1, max(1, p.n // 2) + 1):
            sets = [build_family_clique(p, k, i, verify=False).members for i in range(1, p.n + 1)]
            assert len(set(sets)) == p.n


def test_count_alpha_examples():
    p = P(2, 3)
    g = build_graph(p)
    assert count_alpha_in_clique(p, build_family_clique(p, 1, 1).members, g) == 1
    assert count_alpha_in_clique(p, build_middle_clique(p).members, g) == 0
    p2 = P(2, 2)
    assert count_alpha_in_clique(p2, {1, 3}) == 1
    assert {1, 3} == build_family_clique(p2, 1, 1).members


def test_count_alpha_requires_maximal():
    with pytest.raises(NotMaximal):
        count_alpha_in_clique(P(2, 3), {1})


@pytest.mark.parametrize("p", grid(100), ids=grid_ids(grid(100)))
def test_at_most_one_basis_vector_per_maximal_clique(p):
    g = build_graph(p)
    for members in enumerate_maximal_cliques(g):
        assert count_alpha_in_clique(p, members, g) <= 1


def test_support_closed_maximality():
    assert support_closed_is_maximal_clique(3, {0b011, 0b101, 0b110, 0b111}) == (True, True)
    assert support_closed_is_maximal_clique(3, {0b001, 0b010}) == (False, False)
    assert support_closed_is_maximal_clique(2, {0b11}) == (True, False)
