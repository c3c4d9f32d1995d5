"""Deliberate single-constant faults in the closed forms, for testing ``verify``.

Each fault replaces one function of :mod:`nzcgraph.formulas` with a wrapper
that is off by one (integers) or flipped (booleans).  Every other module
reaches the closed forms through the ``formulas`` module attributes, so a
patched function is seen everywhere.
"""
from __future__ import annotations

import contextlib
from typing import Callable, Iterator

from . import formulas


def _plus_one(fn: Callable) -> Callable:
    return lambda *args: fn(*args) + 1


def _negated(fn: Callable) -> Callable:
    return lambda *args: not fn(*args)


def _omega_plus_one(fn: Callable) -> Callable:
    def wrapped(params):
        value, winner = fn(params)
        return value + 1, winner

    return wrapped


def _bound_plus_one(index: int) -> Callable[[Callable], Callable]:
    def mutate(fn: Callable) -> Callable:
        def wrapped(params):
            bounds = list(fn(params))
            bounds[index] += 1
            return tuple(bounds)

        return wrapped

    return mutate


# fault name -> (formulas attribute, mutation)
FAULTS: dict[str, tuple[str, Callable[[Callable], Callable]]] = {
    "order": ("order_formula", _plus_one),
    "size": ("size_formula", _plus_one),
    "degree": ("degree_formula", _plus_one),
    "min_degree": ("min_degree_formula", _plus_one),
    "edge_connectivity": ("edge_connectivity_formula", _plus_one),
    "complete_edge_connectivity": ("complete_graph_edge_connectivity", _plus_one),
    "support_count": ("count_with_support_size", _plus_one),
    "independence": ("independence_formula", _plus_one),
    "diameter": ("diameter_formula", _plus_one),
    "complete": ("is_complete_formula", _negated),
    "eulerian": ("eulerian_formula", _negated),
    "family_size": ("family_clique_size", _plus_one),
    "middle_size": ("middle_clique_size", _plus_one),
    "clique_number": ("clique_number", _omega_plus_one),
    "chi_lower": ("chromatic_bounds", _bound_plus_one(0)),
    "chi_upper": ("chromatic_bounds", _bound_plus_one(1)),
    "binomial_inequality": ("appendix_inequality_holds", _negated),
    "dirac": ("dirac_condition_holds", _negated),
    "nash_williams": ("nash_williams_condition_holds", _negated),
    "hamiltonian": ("hamiltonian_formula", _negated),
}


@contextlib.contextmanager
def injected(name: str) -> Iterator[None]:
    """Apply fault ``name`` for the duration of the block."""
    if name not in FAULTS:
        raise KeyError(f"unknown fault {name!r}; known: {', '.join(sorted(FAULTS))}")
    attr, mutate = FAULTS[name]
    original = getattr(formulas, attr)
    setattr(formulas, attr, mutate(original))
    try:
        yield
    finally:
        setattr(formulas, attr, original)
