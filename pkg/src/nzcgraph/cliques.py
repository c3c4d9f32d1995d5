"""Maximal cliques: the two explicit families, exhaustive enumeration, classification.

Internally a vertex set is a Python int with bit ``id - 1`` set per member.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import (
    BadFamilyIndex,
    BudgetExceeded,
    EmptySet,
    NotMaximal,
    UnknownVertex,
    VerificationFailed,
)
from .graph import ComponentGraph, _bits, build_graph, max_clique_size
from .space import GraphParams, require_mask_width, support_masks

CLIQUE_BUDGET = 127


class CliqueKind(enum.Enum):
    FAMILY = "family"
    MIDDLE = "middle"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class CliqueDescriptor:
    kind: CliqueKind
    members: frozenset[int]
    k: int | None = None
    i: int | None = None

    def __str__(self) -> str:
        if self.kind is CliqueKind.FAMILY:
            return f"Family(k={self.k}, i={self.i}) size={len(self.members)}"
        return f"{self.kind.value.capitalize()} size={len(self.members)}"


def _ids_to_mask(ids, limit: int) -> int:
    mask = 0
    for v in ids:
        if not 1 <= v <= limit:
            raise UnknownVertex(f"vertex id {v} outside [1, {limit}]")
        mask |= 1 << (v - 1)
    return mask


def _mask_to_ids(mask: int) -> list[int]:
    return [i + 1 for i in _bits(mask)]


@dataclass
class _Layout:
    """Vertex sets keyed by support shape, as bitmasks over row indices."""

    params: GraphParams
    level: list[int]  # level[k]: support size exactly k
    star: list[int]  # star[i]: basis index i (1-based) in support
    at_least: list[int] = field(default_factory=list)  # at_least[k]: support size >= k

    def family(self, k: int, i: int) -> int:
        return self.star[i] & self.at_least[k]

    @property
    def middle(self) -> int:
        return self.at_least[self.params.n // 2 + 1]


@lru_cache(maxsize=16)
def _layout(params: GraphParams) -> _Layout:
    require_mask_width(params)
    masks = support_masks(params)
    sizes = np.bitwise_count(masks)
    n = params.n

    def to_int(flags: np.ndarray) -> int:
        return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")

    level = [0] + [to_int(sizes == k) for k in range(1, n + 1)]
    star = [0] + [to_int((masks >> np.uint64(i - 1)) & np.uint64(1) == 1) for i in range(1, n + 1)]
    at_least = [0] * (n + 2)
    for k in range(n, 0, -1):
        at_least[k] = at_least[k + 1] | level[k]
    return _Layout(params, level, star, at_least)


def _check_family_index(params: GraphParams, k: int, i: int) -> None:
    n = params.n
    if not 1 <= i <= n:
        raise BadFamilyIndex(f"basis index i={i} outside [1, {n}]")
    if k < 1 or (2 * k > n and not (n == 1 and k == 1)):
        raise BadFamilyIndex(f"family index k={k} needs 1 <= k <= n/2 (n={n})")


def support_closed_is_maximal_clique(n: int, supports: set[int]) -> tuple[bool, bool]:
    """(is clique, is maximal) for a vertex set that is a union of whole support classes.

    Vertices with equal support have equal neighbourhoods and are adjacent,
    so it is enough to reason about the support masks themselves.
    """
    s = np.fromiter(sorted(supports), dtype=np.uint64, count=len(supports))
    if not ((s[:, None] & s[None, :]) != 0).all():
        return False, False
    every = np.arange(1, 1 << n, dtype=np.uint64)
    outside = every[~np.isin(every, s)]
    meets_all = ((outside[:, None] & s[None, :]) != 0).all(axis=1)
    return True, not meets_all.any()


def _support_set(layout: _Layout, mask: int) -> set[int]:
    masks = support_masks(layout.params)
    return {int(masks[i]) for i in _bits(mask)}


def _verified(layout: _Layout, mask: int, what: str) -> None:
    clique, maximal = support_closed_is_maximal_clique(layout.params.n, _support_set(layout, mask))
    if not clique:
        raise VerificationFailed(f"{what} is not a clique")
    if not maximal:
        raise VerificationFailed(f"{what} is a clique but not maximal")


def build_family_clique(params: GraphParams, k: int, i: int, verify: bool = True) -> CliqueDescriptor:
    """``{b : e_i in supp(b), |supp(b)| >= k}``, checked to be a maximal clique unless ``verify=False``.

    Only ``k == 1`` (or ``n <= 2``) passes verification: for ``k >= 2`` the vertex
    supported on every basis index except ``i`` meets every member.
    """
    _check_family_index(params, k, i)
    layout = _layout(params)
    mask = layout.family(k, i)
    if verify:
        _verified(layout, mask, f"M_{{{k},{i}}} for {params}")
    return CliqueDescriptor(CliqueKind.FAMILY, frozenset(_mask_to_ids(mask)), k, i)


def build_middle_clique(params: GraphParams, verify: bool = True) -> CliqueDescriptor:
    """``{b : |supp(b)| > n/2}``, checked to be a maximal clique unless ``verify=False``.

    The check is skipped for ``(2, 2)``, where the set is the single vertex
    ``(1, 1)``.  For other even ``n`` the check fails: adding the vertices
    of support size ``n/2`` that contain index 1 keeps a clique.
    """
    layout = _layout(params)
    mask = layout.middle
    if verify and (params.q, params.n) != (2, 2):
        _verified(layout, mask, f"middle clique for {params}")
    return CliqueDescriptor(CliqueKind.MIDDLE, frozenset(_mask_to_ids(mask)), params.n // 2 + 1)


def _is_maximal_mask(g: ComponentGraph, s: int) -> bool:
    nbrs = g.bitsets
    common = g.all_vertices
    for v in _bits(s):
        if (s & ~(1 << v)) & ~nbrs[v]:
            return False
        common &= nbrs[v]
    return not common & ~s


def is_maximal_clique(g: ComponentGraph, s) -> bool:
    s = list(s)
    if not s:
        raise EmptySet("empty vertex set")
    return _is_maximal_mask(g, _ids_to_mask(s, g.vertex_count))


def degeneracy_order(g: ComponentGraph) -> list[int]:
    """Row indices by repeated removal of a minimum-degree vertex (smallest index on ties)."""
    nbrs = g.bitsets
    alive = g.all_vertices
    deg = [int(d) for d in g.degrees]
    order = []
    for _ in range(g.vertex_count):
        v = min(_bits(alive), key=lambda u: (deg[u], u))
        order.append(v)
        alive &= ~(1 << v)
        for u in _bits(nbrs[v] & alive):
            deg[u] -= 1
    return order


def _lex_key(mask: int, width: int) -> int:
    return int(format(mask, f"0{width}b")[::-1], 2)


def maximal_clique_masks(g: ComponentGraph, budget: int = CLIQUE_BUDGET) -> list[int]:
    """Every maximal clique as an int mask, ordered lexicographically by sorted member ids."""
    if g.vertex_count > budget:
        raise BudgetExceeded(g.vertex_count, budget, "clique enumeration vertices")
    order = np.array(degeneracy_order(g), dtype=np.int64)
    found = kernels.maximal_cliques(g.rows, g.vertex_count, order)
    raw = found.astype("<u8")
    masks = [int.from_bytes(raw[r].tobytes(), "little") for r in range(len(raw))]
    # maximal cliques form an antichain, so the first differing id decides the order
    width = g.vertex_count
    masks.sort(key=lambda m: _lex_key(m, width), reverse=True)
    return masks


def enumerate_maximal_cliques(g: ComponentGraph, budget: int = CLIQUE_BUDGET):
    for mask in maximal_clique_masks(g, budget):
        yield tuple(_mask_to_ids(mask))


def naive_maximal_cliques(g: ComponentGraph, budget: int = 15) -> list[tuple[int, ...]]:
    """All-subsets scan; only for tiny graphs."""
    if g.vertex_count > budget:
        raise BudgetExceeded(g.vertex_count, budget, "naive clique scan vertices")
    nbrs = g.bitsets
    cliques = []
    for s in range(1, 1 << g.vertex_count):
        if all(not ((s & ~(1 << v)) & ~nbrs[v]) for v in _bits(s)) and _is_maximal_mask(g, s):
            cliques.append(tuple(_mask_to_ids(s)))
    return sorted(cliques)


def _classify_mask(layout: _Layout, mask: int) -> tuple[CliqueKind, int | None, int | None]:
    n = layout.params.n
    k = next(k for k in range(1, n + 1) if mask & layout.level[k])
    if 2 * k <= n:
        smallest = mask & layout.level[k]
        # common basis index of the smallest supports; ties resolved by the set equality
        for i in range(1, n + 1):
            if not smallest & ~layout.star[i] and mask == layout.family(k, i):
                return CliqueKind.FAMILY, k, i
        return CliqueKind.UNCLASSIFIED, k, None
    if k == n // 2 + 1 and mask == layout.middle:
        return CliqueKind.MIDDLE, k, None
    return CliqueKind.UNCLASSIFIED, k, None


def classify_maximal_clique(params: GraphParams, s, g: ComponentGraph | None = None) -> CliqueDescriptor:
    s = list(s)
    if not s:
        raise EmptySet("empty vertex set")
    if g is None:
        g = build_graph(params)
    mask = _ids_to_mask(s, g.vertex_count)
    if not _is_maximal_mask(g, mask):
        raise NotMaximal(f"{sorted(s)} is not a maximal clique of {params}")
    kind, k, i = _classify_mask(_layout(params), mask)
    return CliqueDescriptor(kind, frozenset(s), k, i)


@dataclass
class TaxonomySummary:
    """Classification tally over every maximal clique of one graph."""

    total: int = 0
    family: dict[tuple[int, int], int] = field(default_factory=dict)  # (k, i) -> size
    middle_sizes: list[int] = field(default_factory=list)
    unclassified: int = 0
    unclassified_by_k: dict[int, int] = field(default_factory=dict)
    largest: int = 0
    examples: list[tuple[int, ...]] = field(default_factory=list)


def classify_all(
    g: ComponentGraph, budget: int = CLIQUE_BUDGET, keep_examples: int = 3, masks: list[int] | None = None
) -> TaxonomySummary:
    """Tally every maximal clique of ``g`` (or the given clique ``masks``) by kind."""
    layout = _layout(g.params)
    summary = TaxonomySummary()
    if masks is None:
        masks = maximal_clique_masks(g, budget)
    for mask in masks:
        size = mask.bit_count()
        summary.total += 1
        summary.largest = max(summary.largest, size)
        kind, k, i = _classify_mask(layout, mask)
        if kind is CliqueKind.FAMILY:
            summary.family[(k, i)] = size
        elif kind is CliqueKind.MIDDLE:
            summary.middle_sizes.append(size)
        else:
            summary.unclassified += 1
            summary.unclassified_by_k[k] = summary.unclassified_by_k.get(k, 0) + 1
            if len(summary.examples) < keep_examples:
                summary.examples.append(tuple(_mask_to_ids(mask)))
    return summary


def clique_number_exact(g: ComponentGraph, budget: int = CLIQUE_BUDGET) -> int:
    if g.vertex_count > budget:
        raise BudgetExceeded(g.vertex_count, budget, "clique oracle vertices")
    return max_clique_size(g.bitsets, g.all_vertices)


def count_alpha_in_clique(params: GraphParams, s, g: ComponentGraph | None = None) -> int:
    """Number of basis vectors in the maximal clique ``s``.

    Raises :class:`VerificationFailed` if there are two or more, or if the one
    basis vector ``e_i`` present does not force ``s == M_{1,i}``.
    """
    s = set(s)
    if g is None:
        g = build_graph(params)
    mask = _ids_to_mask(s, g.vertex_count) if s else 0
    if not s or not _is_maximal_mask(g, mask):
        raise NotMaximal(f"{sorted(s)} is not a maximal clique of {params}")
    present = [i + 1 for i in range(params.n) if params.q**i in s]
    if len(present) > 1:
        raise VerificationFailed(f"maximal clique holds basis vectors {present}")
    if present and mask != _layout(params).family(1, present[0]):
        raise VerificationFailed(f"maximal clique through e_{present[0]} differs from M_{{1,{present[0]}}}")
    return len(present)
