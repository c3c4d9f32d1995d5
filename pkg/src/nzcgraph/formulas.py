"""Closed-form invariants of the non-zero component graph.

Everything here is exact integer arithmetic on Python ints; nothing builds
the graph, so any ``(q, n)`` is accepted.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

from .errors import BadFamilyIndex, BadSupportSize, InvalidDimension
from .space import GraphParams


class CliqueWinner(enum.Enum):
    FAMILY_K1 = "family"
    MIDDLE = "middle"
    TIE = "tie"

    def describe(self) -> str:
        return "family k=1" if self is CliqueWinner.FAMILY_K1 else self.value


def order_formula(params: GraphParams) -> int:
    return params.q**params.n - 1


def size_formula(params: GraphParams) -> int:
    q, n = params.q, params.n
    numerator = q ** (2 * n) - q**n + 1 - (2 * q - 1) ** n
    assert numerator >= 0 and numerator % 2 == 0, f"bad edge-count numerator {numerator}"
    return numerator // 2


def _check_k(params: GraphParams, k: int) -> None:
    if not 1 <= k <= params.n:
        raise BadSupportSize(k, params.n)


def degree_formula(params: GraphParams, k: int) -> int:
    """Degree of any vertex whose support has ``k`` basis vectors."""
    _check_k(params, k)
    q, n = params.q, params.n
    return (q**k - 1) * q ** (n - k) - 1


def min_degree_formula(params: GraphParams) -> int:
    q, n = params.q, params.n
    return q ** (n - 1) * (q - 1) - 1


def edge_connectivity_formula(params: GraphParams) -> int:
    # rests on diameter 2, which needs n >= 2
    if params.n < 2:
        raise InvalidDimension(params.n, "edge-connectivity formula needs n >= 2")
    return min_degree_formula(params)


def complete_graph_edge_connectivity(params: GraphParams) -> int:
    """Edge connectivity for ``n == 1``, where the graph is ``K_{q-1}``."""
    return max(params.q - 2, 0)


def independence_formula(params: GraphParams) -> int:
    # the basis vectors are a largest independent set
    return params.n


def diameter_formula(params: GraphParams) -> int:
    if params.n >= 2:
        return 2
    return 0 if params.q == 2 else 1


def is_complete_formula(params: GraphParams) -> bool:
    return params.n == 1


def eulerian_formula(params: GraphParams) -> bool:
    """Connected for every ``(q, n)``, so Eulerian iff every degree value is even."""
    return all(degree_formula(params, k) % 2 == 0 for k in range(1, params.n + 1))


def count_with_support_size(params: GraphParams, k: int) -> int:
    _check_k(params, k)
    return comb(params.n, k) * (params.q - 1) ** k


def family_clique_size(params: GraphParams, k: int) -> int:
    """Size of ``{b : i in supp(b), |supp(b)| >= k}`` for a fixed basis index ``i``."""
    n = params.n
    if k < 1 or (2 * k > n and not (n == 1 and k == 1)):
        raise BadFamilyIndex(f"family index k={k} needs 1 <= k <= n/2 (n={n})")
    s = params.q - 1
    return s * sum(comb(n - 1, r) * s**r for r in range(k - 1, n))


def middle_clique_size(params: GraphParams) -> int:
    n = params.n
    s = params.q - 1
    return sum(comb(n, r) * s**r for r in range(n // 2 + 1, n + 1))


def clique_number(params: GraphParams) -> tuple[int, CliqueWinner]:
    family = family_clique_size(params, 1)
    middle = middle_clique_size(params)
    if family > middle:
        return family, CliqueWinner.FAMILY_K1
    if middle > family:
        return middle, CliqueWinner.MIDDLE
    return family, CliqueWinner.TIE


def chromatic_bounds(params: GraphParams) -> tuple[int, int]:
    """Lower bound ``omega``; upper bound ``floor((omega + |V| + 1 - alpha) / 2)`` with ``alpha = n``."""
    omega, _ = clique_number(params)
    upper = (omega + order_formula(params) + 1 - independence_formula(params)) // 2
    return omega, upper


def chromatic_bound_source(params: GraphParams) -> str:
    # the q=2 value is stated outright; other q reuse the same argument
    return "stated bound" if params.q == 2 else "derived bound"


def binomial_inequality_in_scope(params: GraphParams) -> bool:
    return params.q > 2 and params.n % 2 == 1


def appendix_inequality_holds(params: GraphParams) -> bool:
    """Strict ``(q-1) q**(n-1) < middle_clique_size``; meaningful for q > 2, n odd."""
    q, n = params.q, params.n
    return (q - 1) * q ** (n - 1) < middle_clique_size(params)


def dirac_condition_holds(params: GraphParams) -> bool:
    return 2 * min_degree_formula(params) >= order_formula(params)


def nash_williams_condition_holds(params: GraphParams) -> bool:
    # delta >= max((|V| + 2) / 3, alpha) with alpha = n, compared without division
    delta = min_degree_formula(params)
    return 3 * delta >= order_formula(params) + 2 and delta >= independence_formula(params)


@dataclass(frozen=True)
class InvariantReport:
    params: GraphParams
    order: int
    size: int
    degrees: tuple[tuple[int, int, int], ...]  # (k, degree, count)
    min_degree: int
    edge_connectivity: int
    independence_number: int
    clique_number: int
    clique_winner: CliqueWinner
    chi_lower: int
    chi_upper: int
    chi_source: str
    binomial_inequality: bool
    diameter: int
    complete: bool
    eulerian: bool
    hamiltonian: bool
    hamiltonian_reason: str


def hamiltonian_formula(params: GraphParams) -> bool:
    return _hamiltonicity_verdict(params)[0]


def _hamiltonicity_verdict(params: GraphParams) -> tuple[bool, str]:
    q, n = params.q, params.n
    if n == 1:
        if q == 2:
            return False, "single vertex"
        return True, "complete graph"
    if q == 2 and n == 2:
        return False, "path P3"
    if dirac_condition_holds(params):
        return True, "Dirac condition"
    return True, "2-connected, Nash-Williams condition"


def invariant_report(params: GraphParams) -> InvariantReport:
    n = params.n
    degrees = tuple(
        (k, degree_formula(params, k), count_with_support_size(params, k)) for k in range(1, n + 1)
    )
    omega, winner = clique_number(params)
    lo, hi = chromatic_bounds(params)
    if n >= 2:
        lam = edge_connectivity_formula(params)
    else:
        lam = complete_graph_edge_connectivity(params)
    _, reason = _hamiltonicity_verdict(params)
    return InvariantReport(
        params=params,
        order=order_formula(params),
        size=size_formula(params),
        degrees=degrees,
        min_degree=min_degree_formula(params),
        edge_connectivity=lam,
        independence_number=independence_formula(params),
        clique_number=omega,
        clique_winner=winner,
        chi_lower=lo,
        chi_upper=hi,
        chi_source=chromatic_bound_source(params),
        binomial_inequality=appendix_inequality_holds(params),
        diameter=diameter_formula(params),
        complete=is_complete_formula(params),
        eulerian=eulerian_formula(params),
        hamiltonian=hamiltonian_formula(params),
        hamiltonian_reason=reason,
    )
