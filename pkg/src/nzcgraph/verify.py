"""Cross-check every closed form against an independent computation, over a grid of ``(q, n)``.

Each check has a fixed name.  Where a closed form is compared with an oracle,
``expected`` is the oracle's value and ``actual`` the closed form's.  Where a
structural claim is checked (diameter 2, non-Eulerian, ...), ``expected`` is
the claim and ``actual`` what the explicit graph shows.

Closed forms are always reached as ``formulas.<name>`` so that
:mod:`nzcgraph.faults` can swap them out.
"""
from __future__ import annotations

import csv
import enum
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor

import numpy as np

from . import cliques, formulas
from .errors import ConfigError, NZCError
from .graph import (
    EXACT_BUDGET,
    MIN_CUT_BUDGET,
    ComponentGraph,
    basis_vertex_ids,
    build_graph,
    chromatic_number_exact,
    degree_histogram,
    diameter_exact,
    edge_connectivity_exact,
    independence_number_exact,
    is_complete,
    is_connected,
    is_eulerian,
    is_independent,
    is_two_connected,
    naive_edge_count,
    vertex_budget,
)
from .hamilton import (
    DEFAULT_NODE_BUDGET,
    EXHAUSTIVE_BUDGET,
    HamiltonStatus,
    exhaustive_hamiltonian,
    find_hamiltonian_cycle,
    validate_cycle,
)
from .space import GraphParams, validate_params

DEFAULT_Q = (2, 3, 4, 5, 7, 8, 9)
GRID_VERTEX_CAP = 4096
# prime powers 3..16 and odd n up to 15
BINOMIAL_Q = (3, 4, 5, 7, 8, 9, 11, 13, 16)
BINOMIAL_N = tuple(range(1, 16, 2))


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class Budgets:
    vertices: int = field(default_factory=vertex_budget)
    min_cut: int = MIN_CUT_BUDGET
    exact: int = EXACT_BUDGET
    cliques: int = cliques.CLIQUE_BUDGET
    exhaustive: int = EXHAUSTIVE_BUDGET
    hamilton_nodes: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        for name, value in vars(self).items():
            if value <= 0:
                raise ConfigError(f"budget {name} must be positive, got {value}")


@dataclass(frozen=True)
class SweepConfig:
    """Grid and budgets for ``verify`` and ``table``.

    ``n_range=None`` means: for each q, n = 1, 2, ... while ``q**n - 1 <= grid_cap``.
    """

    q_list: tuple[int, ...] = DEFAULT_Q
    n_range: tuple[int, int] | None = None
    budgets: Budgets = field(default_factory=Budgets)
    output: OutputFormat = OutputFormat.TEXT
    seed: int = 0
    grid_cap: int = GRID_VERTEX_CAP
    binomial_range: bool = False

    def __post_init__(self):
        if not self.q_list:
            raise ConfigError("empty q list")
        for q in self.q_list:
            validate_params(q, 1)
        if self.n_range is not None:
            lo, hi = self.n_range
            if lo < 1:
                raise ConfigError(f"n range starts at {lo}; dimensions start at 1")
            if hi < lo:
                raise ConfigError(f"empty n range {lo}-{hi}")
        if self.grid_cap < 1:
            raise ConfigError("grid cap must be positive")

    def points(self) -> list[GraphParams]:
        out = []
        for q in sorted(set(self.q_list)):
            if self.n_range is None:
                n = 1
                while q**n - 1 <= self.grid_cap:
                    out.append(validate_params(q, n))
                    n += 1
            else:
                lo, hi = self.n_range
                out.extend(validate_params(q, n) for n in range(lo, hi + 1))
        return out


@dataclass(frozen=True)
class CheckResult:
    q: int
    n: int
    invariant: str
    status: Status
    expected: object = None
    actual: object = None
    detail: str = ""

    def message(self) -> str:
        where = f"({self.q},{self.n})"
        if self.status is Status.FAIL:
            text = (
                f"{self.invariant} mismatch at {where}: "
                f"expected {_show(self.expected)}, actual {_show(self.actual)}"
            )
        elif self.status is Status.SKIPPED:
            text = f"{self.invariant} skipped at {where}"
        else:
            text = f"{self.invariant} ok at {where}: {_show(self.actual)}"
        return f"{text} [{self.detail}]" if self.detail else text

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "invariant": self.invariant,
            "status": self.status.value,
            "expected": _plain(self.expected),
            "actual": _plain(self.actual),
            "detail": self.detail,
        }


def _show(value) -> str:
    value = _plain(value)
    if isinstance(value, list):
        return "(" + ", ".join(map(_show, value)) + ")"
    return str(value)


def _plain(value):
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


class _Recorder:
    def __init__(self, params: GraphParams):
        self.q, self.n = params.q, params.n
        self.results: list[CheckResult] = []

    def check(self, name: str, expected, actual, detail: str = "") -> bool:
        ok = _plain(expected) == _plain(actual)
        status = Status.PASS if ok else Status.FAIL
        self.results.append(CheckResult(self.q, self.n, name, status, expected, actual, detail))
        return ok

    def skip(self, name: str, reason: str) -> None:
        self.results.append(CheckResult(self.q, self.n, name, Status.SKIPPED, detail=reason))


def _over(size: int, budget: int, what: str = "vertices") -> str:
    return f"{what} {size} > budget {budget}"


def _closed_form_checks(p: GraphParams, rec: _Recorder) -> None:
    q, n = p.q, p.n
    ks = range(1, n + 1)
    degree = [formulas.degree_formula(p, k) for k in ks]
    counts = [formulas.count_with_support_size(p, k) for k in ks]
    rec.check("handshake", sum(c * d for c, d in zip(counts, degree)), 2 * formulas.size_formula(p))
    rec.check("support_count_total", q**n - 1, sum(counts))
    if n >= 2:
        rec.check("degree_monotone", True, all(a < b for a, b in zip(degree, degree[1:])))
    rec.check("min_degree_over_k", min(degree), formulas.min_degree_formula(p))
    if n >= 2:
        rec.check("edge_connectivity_is_min_degree", formulas.min_degree_formula(p), formulas.edge_connectivity_formula(p))
    rec.check("family_k1_closed", (q - 1) * q ** (n - 1), formulas.family_clique_size(p, 1))
    omega, winner = formulas.clique_number(p)
    family, middle = formulas.family_clique_size(p, 1), formulas.middle_clique_size(p)
    rec.check("clique_number_is_max", max(family, middle), omega)
    if q == 2:
        rec.check("clique_number_q2", 2 ** (n - 1), omega)
    if q > 2 and n % 2 == 1:
        rec.check("clique_winner_odd_n", formulas.CliqueWinner.MIDDLE, winner)
        rec.check("binomial_inequality", True, formulas.appendix_inequality_holds(p))
    lo, hi = formulas.chromatic_bounds(p)
    rec.check("chromatic_bounds_ordered", True, lo <= hi, f"[{lo},{hi}]")
    if q == 2:
        binary_hi = floor(Fraction(2 ** n, 2) + Fraction(2**n, 4) - Fraction(n, 2))
        rec.check("chromatic_bounds_q2", (2 ** (n - 1), binary_hi), (lo, hi))
    if q > 2 and n >= 2:
        rec.check("dirac_condition", True, formulas.dirac_condition_holds(p))
    if q == 2 and n >= 3:
        rec.check("nash_williams_condition", True, formulas.nash_williams_condition_holds(p))


def _graph_checks(p: GraphParams, g: ComponentGraph, b: Budgets, seed: int, rec: _Recorder) -> None:
    q, n = p.q, p.n
    nv = g.vertex_count
    rec.check("order", nv, formulas.order_formula(p))

    measured_counts = Counter(g.support_sizes.tolist())
    for k in range(1, n + 1):
        if not rec.check("support_count", measured_counts.get(k, 0), formulas.count_with_support_size(p, k), f"k={k}"):
            break
    naive = naive_edge_count(p)
    rec.check("edge_count", naive, g.edge_count(), "bitset build vs coefficient scan")
    rec.check("size", naive, formulas.size_formula(p))

    by_k = {k: formulas.degree_formula(p, k) for k in range(1, n + 1)}
    degrees = g.degrees.tolist()
    sizes = g.support_sizes.tolist()
    bad = next((i for i in range(nv) if degrees[i] != by_k[sizes[i]]), None)
    if bad is None:
        rec.check("degree", "all vertices", "all vertices")
    else:
        rec.check("degree", degrees[bad], by_k[sizes[bad]], f"vertex {bad + 1}, k={sizes[bad]}")
    predicted = Counter()
    for k in range(1, n + 1):
        predicted[by_k[k]] += formulas.count_with_support_size(p, k)
    rec.check("degree_histogram", degree_histogram(g), dict(sorted(predicted.items())))
    delta = int(g.degrees.min())
    rec.check("min_degree", delta, formulas.min_degree_formula(p))

    if nv > b.min_cut:
        rec.skip("edge_connectivity", _over(nv, b.min_cut))
    else:
        cut = edge_connectivity_exact(g, b.min_cut)
        if n >= 2:
            rec.check("edge_connectivity", cut, formulas.edge_connectivity_formula(p))
        else:
            rec.check("edge_connectivity", cut, formulas.complete_graph_edge_connectivity(p), "complete graph")

    rec.check("connected", True, is_connected(g))
    rec.check("diameter", diameter_exact(g), formulas.diameter_formula(p))
    rec.check("complete", is_complete(g), formulas.is_complete_formula(p))
    eulerian = is_eulerian(g)
    rec.check("eulerian", eulerian, formulas.eulerian_formula(p))
    if n >= 2:
        rec.check("not_eulerian", False, eulerian)

    rec.check("basis_independent", True, is_independent(g, basis_vertex_ids(p)))
    alpha = None
    if nv > b.exact:
        rec.skip("independence", _over(nv, b.exact))
    else:
        alpha = independence_number_exact(g, b.exact)
        rec.check("independence", alpha, formulas.independence_formula(p))

    _clique_checks(p, g, b, rec, alpha)
    _family_checks(p, rec)

    ham = find_hamiltonian_cycle(g, seed=seed, budget=b.hamilton_nodes)
    found = ham.status is HamiltonStatus.CYCLE
    rec.check("hamilton_decided", True, ham.status is not HamiltonStatus.UNKNOWN, ham.method.value)
    if found:
        rec.check("hamilton_cycle_valid", True, validate_cycle(g, ham.cycle), f"length {len(ham.cycle)}")
    rec.check("hamiltonian", found, formulas.hamiltonian_formula(p), ham.method.value)
    if nv <= b.exhaustive:
        rec.check("hamilton_exhaustive", exhaustive_hamiltonian(g, b.exhaustive).status, ham.status)
    else:
        rec.skip("hamilton_exhaustive", _over(nv, b.exhaustive))

    rec.check("dirac_measured", 2 * delta >= nv, formulas.dirac_condition_holds(p))
    a = alpha if alpha is not None else len(basis_vertex_ids(p))
    note = "" if alpha is not None else "alpha taken from the independent basis"
    rec.check("nash_williams_measured", 3 * delta >= nv + 2 and delta >= a, formulas.nash_williams_condition_holds(p), note)
    if (q == 2 and n >= 3) or (q > 2 and n >= 2):
        rec.check("two_connected", True, is_two_connected(g))


def _clique_checks(p: GraphParams, g: ComponentGraph, b: Budgets, rec: _Recorder, alpha: int | None) -> None:
    q, n = p.q, p.n
    nv = g.vertex_count
    names = ("clique_number", "taxonomy", "taxonomy_family_size", "taxonomy_middle_size", "alpha_in_clique")
    if nv > b.cliques:
        for name in names:
            rec.skip(name, _over(nv, b.cliques))
        rec.skip("chromatic", _over(nv, b.exact))
        rec.skip("chromatic_bounds_oracle", _over(nv, b.exact))
        return
    omega = cliques.clique_number_exact(g, b.cliques)
    rec.check("clique_number", omega, formulas.clique_number(p)[0])
    masks = cliques.maximal_clique_masks(g, b.cliques)
    summary = cliques.classify_all(g, b.cliques, masks=masks)
    rec.check("clique_enumeration_max", omega, summary.largest, f"{summary.total} maximal cliques")
    if nv <= 15:
        naive = cliques.naive_maximal_cliques(g)
        enumerated = sorted(tuple(cliques._mask_to_ids(m)) for m in masks)
        rec.check("clique_enumeration_naive", naive, enumerated)
    detail = ""
    if summary.unclassified:
        by_k = ", ".join(f"k={k}: {c}" for k, c in sorted(summary.unclassified_by_k.items()))
        example = summary.examples[0]
        shown = ", ".join(map(str, example[:8])) + (", ..." if len(example) > 8 else "")
        detail = f"of {summary.total}; least support size {by_k}; e.g. size {len(example)}: [{shown}]"
    rec.check("taxonomy", 0, summary.unclassified, detail)
    for (k, i), size in sorted(summary.family.items()):
        rec.check("taxonomy_family_size", size, formulas.family_clique_size(p, k), f"k={k}, i={i}")
    for size in summary.middle_sizes:
        rec.check("taxonomy_middle_size", size, formulas.middle_clique_size(p))
    layout = cliques._layout(p)
    basis = sum(1 << (v - 1) for v in basis_vertex_ids(p))
    violations = 0
    for m in masks:
        held = m & basis
        if held.bit_count() > 1:
            violations += 1
        elif held and m != layout.family(1, _index_of(p, held)):
            violations += 1
    rec.check("alpha_in_clique", 0, violations, f"{len(masks)} maximal cliques")

    if nv > b.exact:
        rec.skip("chromatic", _over(nv, b.exact))
        rec.skip("chromatic_bounds_oracle", _over(nv, b.exact))
        return
    chi = chromatic_number_exact(g, b.exact)
    lo, hi = formulas.chromatic_bounds(p)
    rec.check("chromatic", True, lo <= chi <= hi, f"chi={chi}, bounds [{lo},{hi}]")
    if alpha is not None:
        oracle_hi = (omega + nv + 1 - alpha) // 2
        rec.check("chromatic_bounds_oracle", (omega, oracle_hi), (lo, hi))


def _index_of(p: GraphParams, basis_bit: int) -> int:
    """1-based basis index of the vertex whose row bit is ``basis_bit``."""
    row = basis_bit.bit_length() - 1
    return basis_vertex_ids(p).index(row + 1) + 1


def _family_checks(p: GraphParams, rec: _Recorder) -> None:
    """Explicit family and middle sets, by support shape over the whole vertex set."""
    n = p.n
    layout = cliques._layout(p)
    ks = [1] if n == 1 else list(range(1, n // 2 + 1))
    size_bad = maximal_bad = None
    for k in ks:
        sets = [layout.family(k, i) for i in range(1, n + 1)]
        rec.check("family_distinct", n, len(set(sets)), f"k={k}")
        for i, mask in enumerate(sets, start=1):
            if size_bad is None and mask.bit_count() != formulas.family_clique_size(p, k):
                size_bad = (k, i, mask.bit_count())
            if maximal_bad is None:
                _, maximal = cliques.support_closed_is_maximal_clique(n, cliques._support_set(layout, mask))
                if not maximal:
                    maximal_bad = (k, i)
    if size_bad is None:
        rec.check("family_size", "all k, i", "all k, i")
    else:
        k, i, measured = size_bad
        rec.check("family_size", measured, formulas.family_clique_size(p, k), f"k={k}, i={i}")
    if maximal_bad is None:
        rec.check("family_maximal", True, True)
    else:
        rec.check("family_maximal", True, False, "k={}, i={}".format(*maximal_bad))
    middle = layout.middle
    rec.check("middle_size", middle.bit_count(), formulas.middle_clique_size(p))
    if (p.q, n) != (2, 2):
        _, maximal = cliques.support_closed_is_maximal_clique(n, cliques._support_set(layout, middle))
        rec.check("middle_maximal", True, maximal)
    rec.check(
        "binomial_enumerated",
        layout.family(1, 1).bit_count() < middle.bit_count(),
        formulas.appendix_inequality_holds(p),
    )


def check_point(p: GraphParams, budgets: Budgets | None = None, seed: int = 0) -> list[CheckResult]:
    """Every check at one grid point; graph checks are skipped above the vertex budget."""
    b = budgets or Budgets()
    rec = _Recorder(p)
    _closed_form_checks(p, rec)
    if p.order > b.vertices:
        rec.skip("graph", _over(p.order, b.vertices))
        return rec.results
    try:
        g = build_graph(p, b.vertices)
    except NZCError as exc:
        rec.skip("graph", str(exc))
        return rec.results
    _graph_checks(p, g, b, seed, rec)
    return rec.results


def check_binomial_range() -> list[CheckResult]:
    """The binomial inequality over prime powers 3..16 and odd n <= 15, against a direct sum."""
    out = []
    for q in BINOMIAL_Q:
        for n in BINOMIAL_N:
            p = validate_params(q, n)
            rec = _Recorder(p)
            lhs = (q - 1) * q ** (n - 1)
            rhs = sum(comb(n, r) * (q - 1) ** r for r in range(n // 2 + 1, n + 1))
            rec.check("binomial_range", True, formulas.appendix_inequality_holds(p), f"{lhs} < {rhs}")
            rec.check("binomial_range_direct", True, lhs < rhs, f"{lhs} < {rhs}")
            out.extend(rec.results)
    return out


@dataclass
class SweepReport:
    points: list[GraphParams]
    results: list[CheckResult]

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status is Status.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, int]:
        c = Counter(r.status.value for r in self.results)
        return {s.value: c.get(s.value, 0) for s in Status}


def run_sweep(config: SweepConfig) -> SweepReport:
    points = config.points()
    results: list[CheckResult] = []
    for p in points:
        results.extend(check_point(p, config.budgets, config.seed))
    if config.binomial_range:
        results.extend(check_binomial_range())
    return SweepReport(points, results)


def render(report: SweepReport, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        payload = {
            "points": [[p.q, p.n] for p in report.points],
            "summary": report.counts(),
            "failures": [r.as_dict() for r in report.failures],
            "results": [r.as_dict() for r in report.results],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt is OutputFormat.CSV:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "n", "invariant", "status", "expected", "actual", "detail"])
        for r in report.results:
            d = r.as_dict()
            w.writerow([r.q, r.n, r.invariant, d["status"], _cell(d["expected"]), _cell(d["actual"]), r.detail])
        return buf.getvalue()
    lines = []
    groups: dict[tuple[int, int], list[CheckResult]] = {}
    for r in report.results:
        groups.setdefault((r.q, r.n), []).append(r)
    for (q, n), rs in groups.items():
        c = Counter(r.status for r in rs)
        lines.append(
            f"({q},{n}) pass={c[Status.PASS]} fail={c[Status.FAIL]} skipped={c[Status.SKIPPED]}"
        )
        for r in rs:
            if r.status is not Status.PASS:
                lines.append(f"  {r.status.value} {r.message()}")
    c = report.counts()
    verdict = "OK" if report.ok else "MISMATCH"
    lines.append(
        f"{verdict}: {len(report.points)} grid points, {len(report.results)} checks, "
        f"{c['PASS']} passed, {c['FAIL']} failed, {c['SKIPPED']} skipped"
    )
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    return json.dumps(value, sort_keys=True) if isinstance(value, (list, dict)) else str(value)
