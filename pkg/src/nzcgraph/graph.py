"""Explicit non-zero component graphs and exact analyses on them.

Vertex ``id`` lives at row ``id - 1``.  Rows are bitsets packed into
little-endian ``uint64`` words; the exponential oracles work on the same rows
converted to Python ints.
"""
from __future__ import annotations

import enum
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import BudgetExceeded, DisconnectedGraph, TooSmall
from .space import GraphParams, coefficient_matrix, require_mask_width, support_masks

DEFAULT_VERTEX_BUDGET = 65535
MIN_CUT_BUDGET = 4096
EXACT_BUDGET = 63


def vertex_budget() -> int:
    env = os.environ.get("NZC_BUDGET_VERTICES")
    return int(env) if env else DEFAULT_VERTEX_BUDGET


@dataclass(frozen=True, eq=False)
class ComponentGraph:
    params: GraphParams
    masks: np.ndarray = field(repr=False)
    rows: np.ndarray = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.masks)

    @cached_property
    def bitsets(self) -> list[int]:
        """Neighbourhood of each row index as a Python int."""
        raw = self.rows.astype("<u8")
        return [int.from_bytes(raw[i].tobytes(), "little") for i in range(self.vertex_count)]

    @cached_property
    def degrees(self) -> np.ndarray:
        return kernels.popcounts(self.rows)

    @cached_property
    def support_sizes(self) -> np.ndarray:
        return np.bitwise_count(self.masks).astype(np.int64)

    @property
    def all_vertices(self) -> int:
        return (1 << self.vertex_count) - 1

    def has_edge(self, u: int, v: int) -> bool:
        """Adjacency by vertex id."""
        i, j = u - 1, v - 1
        return bool(int(self.rows[i, j >> 6]) >> (j & 63) & 1)

    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self):
        """Edges ``(u, v)`` by id with ``u < v``, ascending."""
        for i, row in enumerate(self.bitsets):
            for j in _bits(row >> (i + 1) << (i + 1)):
                yield i + 1, j + 1


def build_graph(params: GraphParams, budget: int | None = None) -> ComponentGraph:
    if budget is None:
        budget = vertex_budget()
    require_mask_width(params)
    if params.order > budget:
        raise BudgetExceeded(params.order, budget)
    masks = support_masks(params)
    rows = kernels.adjacency_rows(masks)
    return ComponentGraph(params, masks, rows)


def degree_histogram(g: ComponentGraph) -> dict[int, int]:
    values, counts = np.unique(g.degrees, return_counts=True)
    return {int(d): int(c) for d, c in zip(values, counts)}


def diameter_exact(g: ComponentGraph) -> int:
    ecc = kernels.eccentricities(g.rows, g.vertex_count)
    if (ecc < 0).any():
        raise DisconnectedGraph(f"graph {g.params} is disconnected")
    return int(ecc.max())


def is_connected(g: ComponentGraph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for i in _bits(frontier):
            reach |= g.bitsets[i]
        frontier = reach & ~seen
        seen |= frontier
    return seen == g.all_vertices


def is_eulerian(g: ComponentGraph) -> bool:
    # single vertex counts as Eulerian (empty closed walk)
    if g.vertex_count == 1:
        return True
    return is_connected(g) and not (g.degrees % 2).any()


def is_complete(g: ComponentGraph) -> bool:
    return bool((g.degrees == g.vertex_count - 1).all())


def edge_connectivity_exact(g: ComponentGraph, budget: int = MIN_CUT_BUDGET) -> int:
    if g.vertex_count > budget:
        raise BudgetExceeded(g.vertex_count, budget, "min-cut vertices")
    return int(kernels.min_cut_value(g.rows, g.vertex_count))


def articulation_points(g: ComponentGraph) -> list[int]:
    """Cut vertices by id."""
    mask = kernels.articulation_points(g.rows, g.vertex_count)
    return [int(i) + 1 for i in np.flatnonzero(mask)]


def is_two_connected(g: ComponentGraph) -> bool:
    if g.vertex_count < 3:
        raise TooSmall(f"2-connectivity needs at least 3 vertices, graph has {g.vertex_count}")
    return is_connected(g) and not articulation_points(g)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _colour_sort(cand: int, nbrs: list[int]) -> tuple[list[int], list[int]]:
    """Greedy colour classes of ``cand``; vertices listed by class with running class numbers."""
    order, colours = [], []
    rest = cand
    c = 0
    while rest:
        c += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            rest &= ~(1 << v)
            avail &= ~(1 << v) & ~nbrs[v]
            order.append(v)
            colours.append(c)
    return order, colours


def max_clique_size(nbrs: list[int], candidates: int, lower_bound: int = 0) -> int:
    """Exact clique number of the subgraph induced by ``candidates``.

    Branch and bound with colour-class bounds; ``lower_bound`` must be the
    size of a clique known to exist.
    """
    best = lower_bound
    # relabel so that index order is degree-descending; colour classes follow it
    members = list(_bits(candidates))
    order = sorted(members, key=lambda v: (-(nbrs[v] & candidates).bit_count(), v))
    rank = {v: r for r, v in enumerate(order)}
    relabelled = []
    for v in order:
        row = 0
        for u in _bits(nbrs[v] & candidates):
            row |= 1 << rank[u]
        relabelled.append(row)
    nbrs = relabelled
    candidates = (1 << len(order)) - 1

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, colours = _colour_sort(cand, nbrs)
        for idx in range(len(order) - 1, -1, -1):
            if size + colours[idx] <= best:
                return
            v = order[idx]
            sub = cand & nbrs[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    if candidates:
        expand(0, candidates)
    return best


def independence_number_exact(g: ComponentGraph, budget: int = EXACT_BUDGET) -> int:
    if g.vertex_count > budget:
        raise BudgetExceeded(g.vertex_count, budget, "independence oracle vertices")
    full = g.all_vertices
    complement = [full & ~row & ~(1 << i) for i, row in enumerate(g.bitsets)]
    return max_clique_size(complement, full)


def is_independent(g: ComponentGraph, ids) -> bool:
    idx = [v - 1 for v in ids]
    s = 0
    for i in idx:
        s |= 1 << i
    return all(not (g.bitsets[i] & s) for i in idx)


def basis_vertex_ids(params: GraphParams) -> list[int]:
    return [params.q**i for i in range(params.n)]


class ColouringOrder(enum.Enum):
    BY_ID = "id"
    BY_DEGREE_DESC = "degree"


def greedy_coloring(g: ComponentGraph, order: ColouringOrder = ColouringOrder.BY_DEGREE_DESC):
    """First-fit colouring; returns ``(colour count, {id: colour})``."""
    if order is ColouringOrder.BY_ID:
        seq = range(g.vertex_count)
    else:
        seq = sorted(range(g.vertex_count), key=lambda i: (-int(g.degrees[i]), i))
    colour_of: dict[int, int] = {}
    classes: list[int] = []
    for i in seq:
        nb = g.bitsets[i]
        for c, members in enumerate(classes):
            if not members & nb:
                classes[c] |= 1 << i
                colour_of[i + 1] = c
                break
        else:
            colour_of[i + 1] = len(classes)
            classes.append(1 << i)
    return len(classes), dict(sorted(colour_of.items()))


def is_proper_coloring(g: ComponentGraph, assignment: dict[int, int]) -> bool:
    if len(assignment) != g.vertex_count:
        return False
    return all(assignment[u] != assignment[v] for u, v in g.edges())


def known_clique_ids(g: ComponentGraph) -> list[int]:
    """Largest of the explicit cliques ``{b : i in supp(b)}`` and ``{b : |supp(b)| > n/2}``."""
    star = np.flatnonzero(g.masks & np.uint64(1))
    middle = np.flatnonzero(g.support_sizes >= g.params.n // 2 + 1)
    best = star if len(star) >= len(middle) else middle
    return [int(i) + 1 for i in best]


def _first_fit_colours(nbrs: list[int]) -> int:
    seq = sorted(range(len(nbrs)), key=lambda v: (-nbrs[v].bit_count(), v))
    classes: list[int] = []
    for v in seq:
        for c, members in enumerate(classes):
            if not members & nbrs[v]:
                classes[c] |= 1 << v
                break
        else:
            classes.append(1 << v)
    return len(classes)


def chromatic_number_of(nbrs: list[int], clique: list[int]) -> int:
    """Exact chromatic number of a bitset graph by DSATUR branch and bound.

    ``clique`` (row indices, must be a clique) is precoloured, which fixes
    the lower bound and breaks colour symmetry.
    """
    nv = len(nbrs)
    for a in clique:
        for b in clique:
            if a != b and not nbrs[a] >> b & 1:
                raise ValueError("seed vertices do not form a clique")
    lower = max(len(clique), 1 if nv else 0)
    best = _first_fit_colours(nbrs)
    if best == lower:
        return best
    colour = [-1] * nv
    for c, v in enumerate(clique):
        colour[v] = c
    degree = [row.bit_count() for row in nbrs]

    def solve(used: int, uncoloured: int) -> None:
        nonlocal best
        if not uncoloured:
            best = min(best, used)
            return
        # most saturated vertex, ties by degree then index
        pick, pick_key, pick_forbidden = -1, None, 0
        for v in _bits(uncoloured):
            forbidden = 0
            for u in _bits(nbrs[v] & ~uncoloured):
                forbidden |= 1 << colour[u]
            key = (forbidden.bit_count(), degree[v], -v)
            if pick_key is None or key > pick_key:
                pick, pick_key, pick_forbidden = v, key, forbidden
        rest = uncoloured & ~(1 << pick)
        for c in range(min(used + 1, best - 1)):
            if pick_forbidden >> c & 1:
                continue
            colour[pick] = c
            solve(max(used, c + 1), rest)
            colour[pick] = -1
            if best == lower:
                return

    start = (1 << nv) - 1
    for v in clique:
        start &= ~(1 << v)
    solve(len(clique), start)
    return best


def chromatic_number_exact(g: ComponentGraph, budget: int = EXACT_BUDGET) -> int:
    """Exact chromatic number, seeded with the largest explicit clique of :func:`known_clique_ids`."""
    if g.vertex_count > budget:
        raise BudgetExceeded(g.vertex_count, budget, "chromatic oracle vertices")
    return chromatic_number_of(g.bitsets, [v - 1 for v in known_clique_ids(g)])


def naive_edge_count(params: GraphParams) -> int:
    """Count pairs sharing a non-zero coordinate, straight from the coefficient vectors."""
    nz = (coefficient_matrix(params) != 0).astype(np.float64)
    shared = nz @ nz.T
    return int(np.count_nonzero(np.triu(shared > 0, k=1)))


def degree_profile(g: ComponentGraph) -> Counter:
    """``(support size, degree)`` pairs with multiplicities."""
    return Counter(zip(g.support_sizes.tolist(), g.degrees.tolist()))
