"""``nzc`` command line: closed-form reports and tables, verification sweeps, exports.

Exit codes: 0 success, 1 verification mismatch, 2 usage or configuration
error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from typing import Sequence

from . import formulas
from .cliques import classify_maximal_clique, enumerate_maximal_cliques
from .errors import ConfigError, NZCError
from .export import ExportFormat, export_graph
from .faults import FAULTS, injected
from .graph import build_graph, vertex_budget
from .hamilton import HamiltonStatus, find_hamiltonian_cycle
from .space import GraphParams, validate_params
from .verify import Budgets, OutputFormat, SweepConfig, render, run_sweep

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

TABLE_COLUMNS = (
    "q", "n", "order", "size", "min_degree", "edge_conn", "alpha",
    "omega", "omega_winner", "chi_lo", "chi_hi", "appendix_ineq",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_q_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"bad q list {text!r}; expected e.g. 2,3,4") from None
    if not values:
        raise ConfigError("empty q list")
    return values


def parse_n_range(text: str) -> tuple[int, int]:
    """``"4"`` or ``"1-5"`` (inclusive)."""
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"bad n range {text!r}; expected e.g. 3 or 1-5") from None
    if hi < lo:
        raise ConfigError(f"empty n range {text!r}")
    return lo, hi


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _single_point(args) -> GraphParams:
    q = args.q_pos if args.q_pos is not None else args.q
    n = args.n_pos if args.n_pos is not None else args.n
    if q is None or n is None:
        raise UsageError("need q and n, e.g. `report 2 3` or `--q 2 --n 3`")
    try:
        return validate_params(int(q), int(n))
    except ValueError as exc:
        if isinstance(exc, NZCError):
            raise
        raise UsageError(f"q and n must be integers, got {q!r} and {n!r}") from None


def _budgets(args) -> Budgets:
    kw = {}
    if getattr(args, "budget_vertices", None) is not None:
        kw["vertices"] = args.budget_vertices
    else:
        kw["vertices"] = _env_budget()
    if getattr(args, "budget_exact", None) is not None:
        kw["exact"] = args.budget_exact
    return Budgets(**kw)


def _env_budget() -> int:
    try:
        budget = vertex_budget()
    except ValueError:
        raise ConfigError("NZC_BUDGET_VERTICES must be an integer") from None
    if budget <= 0:
        raise ConfigError("NZC_BUDGET_VERTICES must be positive")
    return budget


def _output_format(args, allowed) -> str:
    if getattr(args, "json", False):
        return "json"
    fmt = args.format or "text"
    if fmt not in allowed:
        raise UsageError(f"--format must be one of {', '.join(allowed)}")
    return fmt


@contextlib.contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
        return
    buf = io.StringIO(newline="")
    yield buf
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


class _IOFailure(Exception):
    pass


def _report_dict(r: formulas.InvariantReport) -> dict:
    return {
        "q": r.params.q,
        "n": r.params.n,
        "order": r.order,
        "size": r.size,
        "degrees": [{"k": k, "degree": d, "count": c} for k, d, c in r.degrees],
        "min_degree": r.min_degree,
        "edge_connectivity": r.edge_connectivity,
        "alpha": r.independence_number,
        "omega": r.clique_number,
        "omega_winner": r.clique_winner.value,
        "chi_lower": r.chi_lower,
        "chi_upper": r.chi_upper,
        "chi_bound_source": r.chi_source,
        "binomial_inequality": r.binomial_inequality,
        "binomial_inequality_in_scope": formulas.binomial_inequality_in_scope(r.params),
        "diameter": r.diameter,
        "complete": r.complete,
        "eulerian": r.eulerian,
        "hamiltonian": r.hamiltonian,
        "hamiltonian_reason": r.hamiltonian_reason,
    }


def format_report(r: formulas.InvariantReport) -> str:
    p = r.params
    lines = [f"q={p.q} n={p.n}", f"order={r.order}", f"size={r.size}", "degrees:"]
    lines += [f"  k={k} degree={d} count={c}" for k, d, c in r.degrees]
    lam_note = "" if p.n >= 2 else " (complete graph)"
    hyp = "" if formulas.binomial_inequality_in_scope(p) else " (outside q>2, n odd)"
    lines += [
        f"min_degree={r.min_degree}",
        f"edge_connectivity={r.edge_connectivity}{lam_note}",
        f"alpha={r.independence_number}",
        f"omega={r.clique_number} ({r.clique_winner.describe()})",
        f"chi in [{r.chi_lower},{r.chi_upper}] ({r.chi_source})",
        f"binomial_inequality={'true' if r.binomial_inequality else 'false'}{hyp}",
        f"diameter={r.diameter}",
        f"complete={_yes(r.complete)}",
        f"eulerian={_yes(r.eulerian)}",
        f"hamiltonian={_yes(r.hamiltonian)} ({r.hamiltonian_reason})",
    ]
    return "\n".join(lines) + "\n"


def cmd_report(args) -> int:
    p = _single_point(args)
    fmt = _output_format(args, ("text", "json"))
    r = formulas.invariant_report(p)
    with _output(args.out) as out:
        if fmt == "json":
            out.write(json.dumps(_report_dict(r), indent=2) + "\n")
        else:
            out.write(format_report(r))
    return EXIT_OK


def _sweep_config(args, fmt: str) -> SweepConfig:
    q_list = parse_q_list(args.q) if args.q is not None else None
    n_range = parse_n_range(args.n) if args.n is not None else None
    kw = {}
    if q_list is not None:
        kw["q_list"] = q_list
    return SweepConfig(
        n_range=n_range,
        budgets=_budgets(args),
        output=OutputFormat(fmt),
        seed=args.seed,
        # the binomial-inequality range rides along with the default grid only
        binomial_range=q_list is None and n_range is None,
        **kw,
    )


def cmd_verify(args) -> int:
    fmt = _output_format(args, ("text", "json", "csv"))
    config = _sweep_config(args, fmt)
    if args.inject_fault:
        if args.inject_fault not in FAULTS:
            raise UsageError(f"unknown fault {args.inject_fault!r}")
        with injected(args.inject_fault):
            report = run_sweep(config)
    else:
        report = run_sweep(config)
    with _output(args.out) as out:
        out.write(render(report, config.output))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def table_rows(config: SweepConfig) -> list[dict]:
    rows = []
    for p in config.points():
        r = formulas.invariant_report(p)
        rows.append({
            "q": p.q,
            "n": p.n,
            "order": r.order,
            "size": r.size,
            "min_degree": r.min_degree,
            "edge_conn": r.edge_connectivity,
            "alpha": r.independence_number,
            "omega": r.clique_number,
            "omega_winner": r.clique_winner.value,
            "chi_lo": r.chi_lower,
            "chi_hi": r.chi_upper,
            "appendix_ineq": "true" if r.binomial_inequality else "false",
        })
    return rows


def cmd_table(args) -> int:
    fmt = _output_format(args, ("text", "json", "csv"))
    config = _sweep_config(args, fmt)
    rows = table_rows(config)
    with _output(args.out) as out:
        if fmt == "json":
            out.write(json.dumps(rows, indent=2) + "\n")
        elif fmt == "csv":
            w = csv.DictWriter(out, fieldnames=TABLE_COLUMNS, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        else:
            cells = [list(TABLE_COLUMNS)] + [[str(row[c]) for c in TABLE_COLUMNS] for row in rows]
            widths = [max(len(line[i]) for line in cells) for i in range(len(TABLE_COLUMNS))]
            for line in cells:
                out.write("  ".join(c.rjust(w) for c, w in zip(line, widths)).rstrip() + "\n")
    return EXIT_OK


def cmd_export(args) -> int:
    p = _single_point(args)
    name = args.fmt_pos or args.format
    if name is None:
        raise UsageError("export needs a format: dot, json or edgelist")
    try:
        fmt = ExportFormat(name)
    except ValueError:
        raise UsageError(f"unknown export format {name!r}; use dot, json or edgelist") from None
    budget = args.budget_vertices if args.budget_vertices is not None else _env_budget()
    g = build_graph(p, budget)
    with _output(args.out) as out:
        export_graph(g, fmt, out)
    return EXIT_OK


def cmd_cliques(args) -> int:
    p = _single_point(args)
    g = build_graph(p, args.budget_vertices if args.budget_vertices is not None else _env_budget())
    with _output(args.out) as out:
        for members in enumerate_maximal_cliques(g):
            desc = classify_maximal_clique(p, members, g)
            out.write(f"{desc}: {' '.join(map(str, members))}\n")
    return EXIT_OK


def cmd_hamilton(args) -> int:
    p = _single_point(args)
    g = build_graph(p, args.budget_vertices if args.budget_vertices is not None else _env_budget())
    result = find_hamiltonian_cycle(g, seed=args.seed)
    with _output(args.out) as out:
        out.write(f"{result.status.value} ({result.method.value}, {result.rotations} rotations)\n")
        if result.status is HamiltonStatus.CYCLE:
            out.write(" ".join(map(str, result.cycle)) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nzc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, point: bool):
        if point:
            sp.add_argument("q_pos", nargs="?", metavar="Q")
            sp.add_argument("n_pos", nargs="?", metavar="N")
            sp.add_argument("--q", help="field order")
            sp.add_argument("--n", help="dimension")
        else:
            sp.add_argument("--q", help="comma-separated field orders (default 2,3,4,5,7,8,9)")
            sp.add_argument("--n", help="dimension or inclusive range like 1-5 (default: up to 4096 vertices)")
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--json", action="store_true", help="shorthand for --format json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget-vertices", type=int, help="materialization budget (env NZC_BUDGET_VERTICES)")
        sp.add_argument("--budget-exact", type=int, help="vertex budget for exact independence and colouring")

    sp = sub.add_parser("report", help="closed-form invariants for one (q, n)")
    common(sp, point=True)
    sp.add_argument("--format", help="text or json")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("verify", help="cross-check closed forms against explicit graphs")
    common(sp, point=False)
    sp.add_argument("--format", help="text, json or csv")
    sp.add_argument("--inject-fault", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", help="closed forms over a grid, no graphs built")
    common(sp, point=False)
    sp.add_argument("--format", help="text, json or csv")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("export", help="write the graph as dot, json or edgelist")
    common(sp, point=True)
    sp.add_argument("fmt_pos", nargs="?", metavar="FORMAT")
    sp.add_argument("--format", help="dot, json or edgelist")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("cliques", help="list and classify every maximal clique")
    common(sp, point=True)
    sp.add_argument("--format", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_cliques)

    sp = sub.add_parser("hamilton", help="find a Hamiltonian cycle")
    common(sp, point=True)
    sp.add_argument("--format", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_hamilton)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ConfigError, NZCError) as exc:
        print(f"nzc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _IOFailure as exc:
        print(f"nzc: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
