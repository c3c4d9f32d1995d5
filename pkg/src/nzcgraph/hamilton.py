"""Explicit Hamiltonian cycles.

Rotation-extension (Posa) does the work on every graph of interest; a
budgeted backtracking search backs it up, and an exhaustive search on tiny
graphs provides certificates of non-Hamiltonicity.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, replace

from .formulas import dirac_condition_holds, nash_williams_condition_holds  # noqa: F401
from .errors import BudgetExceeded
from .graph import ComponentGraph, _bits

EXHAUSTIVE_BUDGET = 20
DEFAULT_NODE_BUDGET = 2_000_000


class HamiltonStatus(enum.Enum):
    CYCLE = "cycle"
    NOT_HAMILTONIAN = "not-hamiltonian"
    UNKNOWN = "unknown"


class HamiltonMethod(enum.Enum):
    ROTATION_EXTENSION = "rotation-extension"
    BACKTRACKING = "backtracking"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class HamiltonResult:
    status: HamiltonStatus
    method: HamiltonMethod
    cycle: tuple[int, ...] = ()
    rotations: int = 0
    nodes: int = 0


def validate_cycle(g: ComponentGraph, cycle) -> bool:
    """True iff ``cycle`` lists every vertex id once and consecutive ids (cyclically) are adjacent."""
    cycle = list(cycle)
    if sorted(cycle) != list(range(1, g.vertex_count + 1)):
        return False
    return all(g.has_edge(cycle[i - 1], cycle[i]) for i in range(len(cycle)))


def _rotation_extension(nbrs: list[int], nv: int, start: int, rng: random.Random, max_rotations: int):
    path = [start]
    pos = [-1] * nv
    pos[start] = 0
    unvisited = ((1 << nv) - 1) & ~(1 << start)
    rotations = 0
    while True:
        end = path[-1]
        ext = nbrs[end] & unvisited
        if ext:
            v = (ext & -ext).bit_length() - 1
            pos[v] = len(path)
            path.append(v)
            unvisited &= ~(1 << v)
            continue
        head = path[0]
        if not unvisited and nbrs[end] >> head & 1:
            return path, rotations
        if rotations >= max_rotations:
            return None, rotations
        # end's neighbours all lie on the path; rotating at u makes u's successor the new end
        last = len(path) - 1
        pivots = [u for u in _bits(nbrs[end]) if pos[u] < last - 1]
        if not pivots:
            return None, rotations

        def useful(u: int) -> bool:
            w = path[pos[u] + 1]
            return bool(nbrs[w] & unvisited) if unvisited else bool(nbrs[w] >> head & 1)

        chosen = next((u for u in pivots if useful(u)), None)
        if chosen is None:
            chosen = rng.choice(pivots)
        j = pos[chosen]
        path[j + 1 :] = path[: j : -1]
        for idx in range(j + 1, len(path)):
            pos[path[idx]] = idx
        rotations += 1


def _backtrack(nbrs: list[int], nv: int, start: int, budget: int | None):
    """Depth-first path search; returns (path or None, nodes, exhausted)."""
    full = (1 << nv) - 1
    path = [start]
    nodes = 0
    # stack of remaining candidate masks, one per path position
    stack = [nbrs[start] & ~(1 << start)]
    visited = 1 << start
    while stack:
        if len(path) == nv:
            if nv >= 2 and nbrs[path[-1]] >> start & 1:
                return path, nodes, False
            stack.pop()
            visited &= ~(1 << path.pop())
            continue
        cand = stack[-1]
        if not cand:
            stack.pop()
            visited &= ~(1 << path.pop())
            continue
        v = (cand & -cand).bit_length() - 1
        stack[-1] = cand & ~(1 << v)
        nodes += 1
        if budget is not None and nodes > budget:
            return None, nodes, False
        path.append(v)
        visited |= 1 << v
        stack.append(nbrs[v] & ~visited & full)
    return None, nodes, True


def hamiltonian_cycle_of(nbrs: list[int], seed: int = 0, budget: int | None = DEFAULT_NODE_BUDGET) -> HamiltonResult:
    """Search a bitset graph for a Hamiltonian cycle; cycle entries are row indices.

    Rotation-extension first, then backtracking from the same start.  With
    ``budget=None`` the backtracking is complete, so a miss is a certificate.
    """
    nv = len(nbrs)
    if nv < 2:
        return HamiltonResult(HamiltonStatus.NOT_HAMILTONIAN, HamiltonMethod.EXHAUSTIVE)
    start = seed % nv
    rotations = 0
    if nv > 3:
        path, rotations = _rotation_extension(nbrs, nv, start, random.Random(seed), max_rotations=4 * nv)
        if path is not None:
            return HamiltonResult(
                HamiltonStatus.CYCLE, HamiltonMethod.ROTATION_EXTENSION, tuple(path), rotations=rotations
            )
    path, nodes, exhausted = _backtrack(nbrs, nv, start, budget)
    method = HamiltonMethod.EXHAUSTIVE if budget is None else HamiltonMethod.BACKTRACKING
    if path is not None:
        return HamiltonResult(HamiltonStatus.CYCLE, method, tuple(path), rotations=rotations, nodes=nodes)
    status = HamiltonStatus.NOT_HAMILTONIAN if exhausted else HamiltonStatus.UNKNOWN
    return HamiltonResult(status, method, rotations=rotations, nodes=nodes)


def _as_ids(result: HamiltonResult) -> HamiltonResult:
    return replace(result, cycle=tuple(v + 1 for v in result.cycle))


def exhaustive_hamiltonian(g: ComponentGraph, budget: int = EXHAUSTIVE_BUDGET) -> HamiltonResult:
    if g.vertex_count > budget:
        raise BudgetExceeded(g.vertex_count, budget, "exhaustive Hamiltonian search vertices")
    nv = g.vertex_count
    if nv < 2:
        return HamiltonResult(HamiltonStatus.NOT_HAMILTONIAN, HamiltonMethod.EXHAUSTIVE)
    path, nodes, _ = _backtrack(g.bitsets, nv, 0, None)
    if path is None:
        return HamiltonResult(HamiltonStatus.NOT_HAMILTONIAN, HamiltonMethod.EXHAUSTIVE, nodes=nodes)
    return HamiltonResult(
        HamiltonStatus.CYCLE, HamiltonMethod.EXHAUSTIVE, tuple(v + 1 for v in path), nodes=nodes
    )


def find_hamiltonian_cycle(g: ComponentGraph, seed: int = 0, budget: int = DEFAULT_NODE_BUDGET) -> HamiltonResult:
    """Hamiltonian cycle of ``g`` as vertex ids, or a certified/undecided status.

    ``NOT_HAMILTONIAN`` only comes from a completed search (tiny graphs are
    searched exhaustively); running out of ``budget`` backtracking nodes
    gives ``UNKNOWN``.
    """
    if g.vertex_count <= 3:
        # covers the single vertex and the path P3
        return exhaustive_hamiltonian(g)
    return _as_ids(hamiltonian_cycle_of(g.bitsets, seed, budget))
