"""Vertices of the non-zero component graph and their supports.

A vertex is a non-null coefficient vector in ``{0, ..., q-1}^n``.  Only the
zero/non-zero pattern matters for adjacency, so non-zero coefficients are
opaque symbols and no finite-field arithmetic is performed.  Vertex ids are
the little-endian base-``q`` encoding of the coefficients, so ids run from 1
to ``q**n - 1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import BadSupportSize, InvalidDimension, NotPrimePower, SelfComparison

# supports are stored in one machine word
MAX_DIM = 64
MAX_FIELD_ORDER = 2**32


def prime_power_base(q: int) -> int | None:
    """Return ``p`` if ``q == p**t`` for a prime ``p`` and ``t >= 1``, else None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return p if q == 1 else None
        p += 1 if p == 2 else 2
    return q


@dataclass(frozen=True)
class GraphParams:
    q: int
    n: int

    @property
    def order(self) -> int:
        return self.q**self.n - 1

    def __str__(self) -> str:
        return f"({self.q},{self.n})"


def validate_params(q: int, n: int) -> GraphParams:
    if isinstance(q, bool) or not isinstance(q, int):
        raise NotPrimePower(q)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidDimension(n)
    if q > MAX_FIELD_ORDER or prime_power_base(q) is None:
        raise NotPrimePower(q)
    return GraphParams(q, n)


def require_mask_width(params: GraphParams) -> None:
    if params.n > MAX_DIM:
        raise InvalidDimension(params.n, f"supports are limited to {MAX_DIM} basis vectors")


@dataclass(frozen=True)
class Support:
    """Basis indices carrying a non-zero coefficient; bit ``i`` is basis vector ``i + 1``."""

    mask: int

    @property
    def k(self) -> int:
        return self.mask.bit_count()

    @property
    def indices(self) -> tuple[int, ...]:
        m = self.mask
        return tuple(i + 1 for i in range(m.bit_length()) if m >> i & 1)


@dataclass(frozen=True)
class Vertex:
    params: GraphParams
    coeffs: tuple[int, ...]

    def __post_init__(self):
        q, n = self.params.q, self.params.n
        if len(self.coeffs) != n:
            raise ValueError(f"expected {n} coefficients, got {len(self.coeffs)}")
        if any(not 0 <= c < q for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {q - 1}]")
        if not any(self.coeffs):
            raise ValueError("the null vector is not a vertex")

    @cached_property
    def id(self) -> int:
        return id_of(self.params, self.coeffs)

    @cached_property
    def support(self) -> Support:
        return support_of(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coeffs)) + ")"


def id_of(params: GraphParams, coeffs) -> int:
    vid = 0
    for c in reversed(coeffs):
        vid = vid * params.q + c
    return vid


def vertex_of(params: GraphParams, vid: int) -> Vertex:
    if not 1 <= vid <= params.order:
        raise ValueError(f"vertex id {vid} outside [1, {params.order}]")
    coeffs = []
    for _ in range(params.n):
        vid, c = divmod(vid, params.q)
        coeffs.append(c)
    return Vertex(params, tuple(coeffs))


def support_of(v: Vertex) -> Support:
    require_mask_width(v.params)
    mask = 0
    for i, c in enumerate(v.coeffs):
        if c:
            mask |= 1 << i
    return Support(mask)


def adjacent(a: Vertex, b: Vertex) -> bool:
    if a.params != b.params:
        raise ValueError("vertices belong to different spaces")
    if a.id == b.id:
        raise SelfComparison(f"vertex {a} compared with itself")
    return a.support.mask & b.support.mask != 0


def enumerate_vertices(params: GraphParams) -> Iterator[Vertex]:
    for vid in range(1, params.order + 1):
        yield vertex_of(params, vid)


def enumerate_with_support_size(params: GraphParams, k: int) -> Iterator[Vertex]:
    if not 1 <= k <= params.n:
        raise BadSupportSize(k, params.n)
    nonzero = range(1, params.q)
    for positions in itertools.combinations(range(params.n), k):
        for values in itertools.product(nonzero, repeat=k):
            coeffs = [0] * params.n
            for pos, val in zip(positions, values):
                coeffs[pos] = val
            yield Vertex(params, tuple(coeffs))


def coefficient_matrix(params: GraphParams) -> np.ndarray:
    """Coefficients of every vertex as a ``(q**n - 1, n)`` array, row ``j`` is id ``j + 1``."""
    ids = np.arange(1, params.order + 1, dtype=np.int64)
    out = np.empty((params.order, params.n), dtype=np.int64)
    for i in range(params.n):
        ids, out[:, i] = np.divmod(ids, params.q)
    return out


def support_masks(params: GraphParams) -> np.ndarray:
    """Support bitmask of every vertex, indexed by ``id - 1``."""
    require_mask_width(params)
    coeffs = coefficient_matrix(params)
    masks = np.zeros(params.order, dtype=np.uint64)
    for i in range(params.n):
        masks |= (coeffs[:, i] != 0).astype(np.uint64) << np.uint64(i)
    return masks
