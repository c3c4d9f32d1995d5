# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bitset kernels.  Signatures mirror :mod:`nzcgraph._fallback`."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int32_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset, memcpy

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


def adjacency_rows(const uint64_t[::1] masks):
    cdef Py_ssize_t nv = masks.shape[0]
    cdef Py_ssize_t words = (nv + 63) // 64
    out = np.zeros((nv, max(words, 1)), dtype=np.uint64)
    cdef uint64_t[:, ::1] rows = out
    cdef Py_ssize_t i, j
    cdef uint64_t mi
    with nogil:
        for i in range(nv):
            mi = masks[i]
            for j in range(nv):
                if j != i and (mi & masks[j]) != 0:
                    rows[i, j >> 6] |= (<uint64_t>1) << (j & 63)
    return out


def popcounts(const uint64_t[:, ::1] rows):
    cdef Py_ssize_t nv = rows.shape[0], words = rows.shape[1]
    out = np.zeros(nv, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef Py_ssize_t i, w
    cdef int64_t c
    with nogil:
        for i in range(nv):
            c = 0
            for w in range(words):
                c += popcount(rows[i, w])
            res[i] = c
    return out


def eccentricities(const uint64_t[:, ::1] rows, Py_ssize_t nv):
    """BFS eccentricity of every vertex; -1 where some vertex is unreachable."""
    cdef Py_ssize_t words = rows.shape[1]
    out = np.zeros(nv, dtype=np.int64)
    cdef int64_t[::1] ecc = out
    cdef uint64_t *visited = <uint64_t *> malloc(words * sizeof(uint64_t))
    cdef uint64_t *frontier = <uint64_t *> malloc(words * sizeof(uint64_t))
    cdef uint64_t *nxt = <uint64_t *> malloc(words * sizeof(uint64_t))
    cdef Py_ssize_t s, u, w, reached, found, level
    try:
        with nogil:
            for s in range(nv):
                memset(visited, 0, words * sizeof(uint64_t))
                visited[s >> 6] |= (<uint64_t>1) << (s & 63)
                memcpy(frontier, visited, words * sizeof(uint64_t))
                reached = 1
                level = 0
                while reached < nv:
                    memset(nxt, 0, words * sizeof(uint64_t))
                    found = 0
                    # pull step: an unvisited vertex joins if it touches the frontier
                    for u in range(nv):
                        if (visited[u >> 6] >> (u & 63)) & 1:
                            continue
                        for w in range(words):
                            if rows[u, w] & frontier[w]:
                                nxt[u >> 6] |= (<uint64_t>1) << (u & 63)
                                found += 1
                                break
                    if found == 0:
                        level = -1
                        break
                    for w in range(words):
                        visited[w] |= nxt[w]
                        frontier[w] = nxt[w]
                    reached += found
                    level += 1
                ecc[s] = level
    finally:
        free(visited)
        free(frontier)
        free(nxt)
    return out


cdef Py_ssize_t uf_find(Py_ssize_t *parent, Py_ssize_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef void uf_union(Py_ssize_t *parent, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    a = uf_find(parent, a)
    b = uf_find(parent, b)
    if a < b:
        parent[b] = a
    elif b < a:
        parent[a] = b


def min_cut_value(const uint64_t[:, ::1] rows, Py_ssize_t nv):
    """Exact global minimum edge cut.

    Maximum-adjacency orderings with capacity-forest contraction: an edge whose
    scan value reaches the best known cut cannot be crossed by a smaller cut,
    so both ends merge.  The last two vertices of every ordering also merge
    after their cut-of-the-phase is recorded.
    """
    if nv < 2:
        return 0
    cdef Py_ssize_t i, j, u, v, step, m, m2, s, t, best_u, gi
    cdef int64_t lam, cut, bestr, deg
    cdef int32_t *wa = <int32_t *> malloc(nv * nv * sizeof(int32_t))
    cdef int32_t *wb = <int32_t *> malloc(nv * nv * sizeof(int32_t))
    cdef int64_t *r = <int64_t *> malloc(nv * sizeof(int64_t))
    cdef char *scanned = <char *> malloc(nv)
    cdef Py_ssize_t *parent = <Py_ssize_t *> malloc(nv * sizeof(Py_ssize_t))
    cdef Py_ssize_t *group = <Py_ssize_t *> malloc(nv * sizeof(Py_ssize_t))
    cdef int32_t *tmp
    cdef int32_t *row
    cdef int32_t *dst
    if not (wa and wb and r and scanned and parent and group):
        free(wa); free(wb); free(r); free(scanned); free(parent); free(group)
        raise MemoryError()
    try:
        with nogil:
            m = nv
            lam = -1
            for i in range(nv):
                deg = 0
                for j in range(nv):
                    if (rows[i, j >> 6] >> (j & 63)) & 1:
                        wa[i * nv + j] = 1
                        deg += 1
                    else:
                        wa[i * nv + j] = 0
                if lam < 0 or deg < lam:
                    lam = deg
            while m > 1 and lam > 0:
                for i in range(m):
                    r[i] = 0
                    scanned[i] = 0
                    parent[i] = i
                s = 0
                t = 0
                cut = 0
                for step in range(m):
                    best_u = -1
                    bestr = -1
                    for u in range(m):
                        if not scanned[u] and r[u] > bestr:
                            bestr = r[u]
                            best_u = u
                    v = best_u
                    scanned[v] = 1
                    if step == m - 2:
                        s = v
                    elif step == m - 1:
                        t = v
                        cut = r[v]
                    row = wa + v * nv
                    for u in range(m):
                        if row[u] != 0 and not scanned[u]:
                            r[u] += row[u]
                            if r[u] >= lam:
                                uf_union(parent, v, u)
                if cut < lam:
                    lam = cut
                uf_union(parent, s, t)
                # relabel groups densely in order of first appearance
                m2 = 0
                for i in range(m):
                    if uf_find(parent, i) == i:
                        group[i] = m2
                        m2 += 1
                for i in range(m):
                    group[i] = group[uf_find(parent, i)]
                for i in range(m2):
                    memset(wb + i * nv, 0, m2 * sizeof(int32_t))
                for i in range(m):
                    gi = group[i]
                    dst = wb + gi * nv
                    row = wa + i * nv
                    for j in range(m):
                        dst[group[j]] += row[j]
                for i in range(m2):
                    wb[i * nv + i] = 0
                tmp = wa
                wa = wb
                wb = tmp
                m = m2
                # every contracted vertex is the shore of a cut
                if m > 1:
                    for i in range(m):
                        deg = 0
                        row = wa + i * nv
                        for j in range(m):
                            deg += row[j]
                        if deg < lam:
                            lam = deg
    finally:
        free(wa)
        free(wb)
        free(r)
        free(scanned)
        free(parent)
        free(group)
    return int(lam)


def articulation_points(const uint64_t[:, ::1] rows, Py_ssize_t nv):
    """Boolean mask of cut vertices (iterative lowpoint DFS)."""
    cdef Py_ssize_t words = rows.shape[1]
    out = np.zeros(nv, dtype=np.bool_)
    cdef cnp.npy_bool[::1] ap = out
    if nv == 0:
        return out
    cdef int64_t *disc = <int64_t *> malloc(nv * sizeof(int64_t))
    cdef int64_t *low = <int64_t *> malloc(nv * sizeof(int64_t))
    cdef Py_ssize_t *par = <Py_ssize_t *> malloc(nv * sizeof(Py_ssize_t))
    cdef Py_ssize_t *stack = <Py_ssize_t *> malloc(nv * sizeof(Py_ssize_t))
    cdef Py_ssize_t *wpos = <Py_ssize_t *> malloc(nv * sizeof(Py_ssize_t))
    cdef uint64_t *rem = <uint64_t *> malloc(nv * sizeof(uint64_t))
    cdef Py_ssize_t *children = <Py_ssize_t *> malloc(nv * sizeof(Py_ssize_t))
    cdef Py_ssize_t root, top, u, v, p
    cdef int64_t clock = 0
    try:
        with nogil:
            for u in range(nv):
                disc[u] = -1
            for root in range(nv):
                if disc[root] != -1:
                    continue
                top = 0
                stack[0] = root
                par[root] = -1
                disc[root] = clock
                low[root] = clock
                clock += 1
                wpos[root] = 0
                rem[root] = rows[root, 0]
                children[root] = 0
                while top >= 0:
                    u = stack[top]
                    while rem[u] == 0 and wpos[u] + 1 < words:
                        wpos[u] += 1
                        rem[u] = rows[u, wpos[u]]
                    if rem[u] != 0:
                        v = wpos[u] * 64 + ctz(rem[u])
                        rem[u] &= rem[u] - 1
                        if disc[v] == -1:
                            par[v] = u
                            disc[v] = clock
                            low[v] = clock
                            clock += 1
                            wpos[v] = 0
                            rem[v] = rows[v, 0]
                            children[v] = 0
                            children[u] += 1
                            top += 1
                            stack[top] = v
                        elif v != par[u] and disc[v] < low[u]:
                            low[u] = disc[v]
                    else:
                        top -= 1
                        p = par[u]
                        if p != -1:
                            if low[u] < low[p]:
                                low[p] = low[u]
                            if par[p] != -1 and low[u] >= disc[p]:
                                ap[p] = 1
                if children[root] > 1:
                    ap[root] = 1
    finally:
        free(disc); free(low); free(par); free(stack); free(wpos); free(rem); free(children)
    return out


cdef struct CliqueBuf:
    uint64_t *data
    Py_ssize_t count
    Py_ssize_t cap
    Py_ssize_t words
    int failed


cdef int emit(CliqueBuf *buf, const uint64_t *clique) noexcept nogil:
    cdef uint64_t *grown
    if buf.count == buf.cap:
        buf.cap = buf.cap * 2 + 16
        grown = <uint64_t *> realloc(buf.data, buf.cap * buf.words * sizeof(uint64_t))
        if grown == NULL:
            buf.failed = 1
            return -1
        buf.data = grown
    memcpy(buf.data + buf.count * buf.words, clique, buf.words * sizeof(uint64_t))
    buf.count += 1
    return 0


cdef void expand(const uint64_t[:, ::1] rows, uint64_t *stackmem, Py_ssize_t depth,
                 Py_ssize_t words, CliqueBuf *buf) noexcept nogil:
    # frame layout per depth: R | P | X, each `words` long
    cdef uint64_t *R = stackmem + depth * 3 * words
    cdef uint64_t *P = R + words
    cdef uint64_t *X = P + words
    cdef uint64_t *R2 = R + 3 * words
    cdef uint64_t *P2 = R2 + words
    cdef uint64_t *X2 = P2 + words
    cdef Py_ssize_t w, u, v, pivot = -1
    cdef int empty_p = 1, empty_x = 1, cnt, best = -1
    cdef uint64_t bits, cand
    if buf.failed:
        return
    for w in range(words):
        if P[w]:
            empty_p = 0
        if X[w]:
            empty_x = 0
    if empty_p:
        if empty_x:
            emit(buf, R)
        return
    # Tomita pivot: vertex of P | X with most neighbours in P
    for w in range(words):
        bits = P[w] | X[w]
        while bits:
            u = w * 64 + ctz(bits)
            bits &= bits - 1
            cnt = 0
            for v in range(words):
                cnt += popcount(P[v] & rows[u, v])
            if cnt > best:
                best = cnt
                pivot = u
    for w in range(words):
        cand = P[w] & ~rows[pivot, w]
        while cand:
            v = w * 64 + ctz(cand)
            cand &= cand - 1
            for u in range(words):
                R2[u] = R[u]
                P2[u] = P[u] & rows[v, u]
                X2[u] = X[u] & rows[v, u]
            R2[v >> 6] |= (<uint64_t>1) << (v & 63)
            expand(rows, stackmem, depth + 1, words, buf)
            P[v >> 6] &= ~((<uint64_t>1) << (v & 63))
            X[v >> 6] |= (<uint64_t>1) << (v & 63)


def maximal_cliques(const uint64_t[:, ::1] rows, Py_ssize_t nv, cnp.int64_t[::1] order):
    """All maximal cliques as bitset rows, outer loop over ``order`` (degeneracy order)."""
    cdef Py_ssize_t words = rows.shape[1]
    cdef Py_ssize_t i, w, v
    cdef CliqueBuf buf
    buf.data = NULL
    buf.count = 0
    buf.cap = 0
    buf.words = words
    buf.failed = 0
    cdef uint64_t *stackmem = <uint64_t *> malloc((nv + 2) * 3 * words * sizeof(uint64_t))
    cdef uint64_t *later = <uint64_t *> malloc(words * sizeof(uint64_t))
    if stackmem == NULL or later == NULL:
        free(stackmem); free(later)
        raise MemoryError()
    try:
        with nogil:
            memset(later, 0, words * sizeof(uint64_t))
            for i in range(nv):
                v = order[i]
                later[v >> 6] |= (<uint64_t>1) << (v & 63)
            for i in range(nv):
                v = order[i]
                later[v >> 6] &= ~((<uint64_t>1) << (v & 63))
                for w in range(words):
                    stackmem[w] = 0
                    stackmem[words + w] = rows[v, w] & later[w]
                    stackmem[2 * words + w] = rows[v, w] & ~later[w]
                stackmem[v >> 6] |= (<uint64_t>1) << (v & 63)
                expand(rows, stackmem, 0, words, &buf)
                if buf.failed:
                    break
        if buf.failed:
            raise MemoryError()
        out = np.empty((buf.count, words), dtype=np.uint64)
        if buf.count:
            memcpy(<void *> cnp.PyArray_DATA(out), buf.data, buf.count * words * sizeof(uint64_t))
        return out
    finally:
        free(buf.data)
        free(stackmem)
        free(later)
