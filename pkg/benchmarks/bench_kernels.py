"""Time the compiled kernels against the pure Python / numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--points 2:8,3:5,2:12]

Each row is one kernel on one graph; results of both backends are compared
before timing is reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from nzcgraph import _fallback
from nzcgraph.cliques import degeneracy_order
from nzcgraph.graph import build_graph
from nzcgraph.space import validate_params

try:
    from nzcgraph import _kernels
except ImportError:  # extension not built
    _kernels = None


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return a.shape == b.shape and bool((a == b).all())
    return a == b


def _cases(g):
    nv = g.vertex_count
    rows, masks = g.rows, g.masks
    yield "adjacency_rows", (masks,), None
    yield "eccentricities", (rows, nv), None
    yield "articulation_points", (rows, nv), None
    if nv <= 4096:
        yield "min_cut_value", (rows, nv), None
    if nv <= 127:
        order = np.array(degeneracy_order(g), dtype=np.int64)
        # clique sets come back in search order; compare as sorted row lists
        yield "maximal_cliques", (rows, nv, order), lambda r: sorted(map(bytes, r))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--points", default="2:6,2:7,3:4,2:10,4:5,2:12,8:4")
    args = ap.parse_args()
    if _kernels is None:
        raise SystemExit("compiled extension not available; build it with `pip install -e .`")

    print(f"{'graph':>8} {'V':>6} {'kernel':>20} {'compiled s':>11} {'fallback s':>11} {'speedup':>8}")
    for spec in args.points.split(","):
        q, n = (int(x) for x in spec.split(":"))
        g = build_graph(validate_params(q, n))
        for name, call_args, key in _cases(g):
            tc, rc = _best(lambda: getattr(_kernels, name)(*call_args), args.repeat)
            tf, rf = _best(lambda: getattr(_fallback, name)(*call_args), args.repeat)
            if key is not None:
                rc, rf = key(rc), key(rf)
            if not _same(rc, rf):
                raise SystemExit(f"backends disagree on {name} for ({q},{n})")
            print(f"{f'({q},{n})':>8} {g.vertex_count:>6} {name:>20} {tc:>11.4f} {tf:>11.4f} {tf / tc:>7.1f}x")


if __name__ == "__main__":
    main()
