"""Pure Python / numpy versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and results; selected by :mod:`nzcgraph.kernels` when the
extension is missing or ``NZC_PURE_PYTHON`` is set.
"""
from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


def adjacency_rows(masks: np.ndarray) -> np.ndarray:
    nv = len(masks)
    dense = (masks[:, None] & masks[None, :]) != 0
    np.fill_diagonal(dense, False)
    return pack_rows(dense)


def pack_rows(dense: np.ndarray) -> np.ndarray:
    nv = dense.shape[0]
    words = max((nv + 63) // 64, 1)
    padded = np.zeros((nv, words * 64), dtype=bool)
    padded[:, :nv] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64).reshape(nv, words)


def unpack_rows(rows: np.ndarray, nv: int) -> np.ndarray:
    as_bytes = rows.astype("<u8").view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :nv].astype(bool)


def popcounts(rows: np.ndarray) -> np.ndarray:
    return np.bitwise_count(rows).sum(axis=1, dtype=np.int64)


def eccentricities(rows: np.ndarray, nv: int) -> np.ndarray:
    # level-synchronous BFS from every source at once
    adj = unpack_rows(rows, nv).astype(np.float32)
    reach = np.eye(nv, dtype=bool)
    ecc = np.zeros(nv, dtype=np.int64)
    done = reach.all(axis=1)
    level = 0
    while not done.all():
        grown = reach | ((reach.astype(np.float32) @ adj) > 0)
        level += 1
        if (grown == reach).all():
            ecc[~done] = -1
            break
        newly = grown.all(axis=1) & ~done
        ecc[newly] = level
        done |= newly
        reach = grown
    return ecc


def min_cut_value(rows: np.ndarray, nv: int) -> int:
    """Exact global min cut; same contraction scheme as the compiled kernel."""
    if nv < 2:
        return 0
    w = unpack_rows(rows, nv).astype(np.int64)
    lam = int(w.sum(axis=1).min())
    while len(w) > 1 and lam > 0:
        m = len(w)
        r = np.zeros(m, dtype=np.int64)
        unscanned = np.ones(m, dtype=bool)
        heads, tails = [], []
        s = t = 0
        cut = 0
        for step in range(m):
            v = int(np.argmax(np.where(unscanned, r, -1)))
            unscanned[v] = False
            if step == m - 2:
                s = v
            elif step == m - 1:
                t = v
                cut = int(r[v])
            touched = unscanned & (w[v] != 0)
            r[touched] += w[v][touched]
            heavy = np.flatnonzero(touched & (r >= lam))
            heads.append(np.full(len(heavy), v))
            tails.append(heavy)
        lam = min(lam, cut)
        heads.append(np.array([s]))
        tails.append(np.array([t]))
        merged = csr_matrix(
            (np.ones(sum(map(len, heads))), (np.concatenate(heads), np.concatenate(tails))),
            shape=(m, m),
        )
        m2, group = connected_components(merged, directed=False)
        order = np.argsort(group, kind="stable")
        starts = np.flatnonzero(np.r_[True, np.diff(group[order]) != 0])
        w = np.add.reduceat(w[order], starts, axis=0)
        w = np.add.reduceat(w[:, order], starts, axis=1)
        np.fill_diagonal(w, 0)
        if m2 > 1:
            lam = min(lam, int(w.sum(axis=1).min()))
    return lam


def articulation_points(rows: np.ndarray, nv: int) -> np.ndarray:
    adj = unpack_rows(rows, nv)
    nbrs = [np.flatnonzero(adj[u]).tolist() for u in range(nv)]
    disc = [-1] * nv
    low = [0] * nv
    parent = [-1] * nv
    ap = np.zeros(nv, dtype=bool)
    clock = 0
    for root in range(nv):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        children = 0
        stack = [(root, iter(nbrs[root]))]
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                if disc[v] == -1:
                    parent[v] = u
                    disc[v] = low[v] = clock
                    clock += 1
                    if u == root:
                        children += 1
                    stack.append((v, iter(nbrs[v])))
                    advanced = True
                    break
                if v != parent[u]:
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            p = parent[u]
            if p != -1:
                low[p] = min(low[p], low[u])
                if parent[p] != -1 and low[u] >= disc[p]:
                    ap[p] = True
        if children > 1:
            ap[root] = True
    return ap


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def maximal_cliques(rows: np.ndarray, nv: int, order: np.ndarray) -> np.ndarray:
    words = rows.shape[1]
    nb = [int.from_bytes(rows[u].astype("<u8").tobytes(), "little") for u in range(nv)]
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                found.append(r)
            return
        pivot = max(_bits(p | x), key=lambda u: ((p & nb[u]).bit_count(), -u))
        for v in _bits(p & ~nb[pivot]):
            bit = 1 << v
            expand(r | bit, p & nb[v], x & nb[v])
            p &= ~bit
            x |= bit

    later = 0
    for v in order:
        later |= 1 << int(v)
    for v in order:
        v = int(v)
        later &= ~(1 << v)
        expand(1 << v, nb[v] & later, nb[v] & ~later)
    out = np.zeros((len(found), words), dtype=np.uint64)
    for i, c in enumerate(found):
        out[i] = np.frombuffer(c.to_bytes(words * 8, "little"), dtype="<u8")
    return out
