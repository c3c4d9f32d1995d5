"""Hot-loop kernels: the compiled extension when importable, numpy otherwise.

Set ``NZC_PURE_PYTHON=1`` before import to force the fallback.
"""
import os

from . import _fallback

if os.environ.get("NZC_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = "fallback" if _impl is _fallback else "compiled"

adjacency_rows = _impl.adjacency_rows
popcounts = _impl.popcounts
eccentricities = _impl.eccentricities
min_cut_value = _impl.min_cut_value
articulation_points = _impl.articulation_points
maximal_cliques = _impl.maximal_cliques

pack_rows = _fallback.pack_rows
unpack_rows = _fallback.unpack_rows
