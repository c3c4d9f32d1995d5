import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from nzcgraph.cli import TABLE_COLUMNS, main
from nzcgraph.export import read_edgelist, read_json_export, rows_from_edges
from nzcgraph.graph import build_graph
from nzcgraph.space import GraphParams

from conftest import coeff_tuples


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_report_binary_three(capsys):
    code, out, _ = run(capsys, "report", "2", "3")
    assert code == 0
    for piece in ("size=15", "omega=4", "chi in [4,4]"):
        assert piece in out


def test_report_three_two(capsys):
    code, out, _ = run(capsys, "report", "--q", "3", "--n", "2")
    assert code == 0
    assert "size=24" in out and "omega=6 (family k=1)" in out


def test_report_json(capsys):
    code, out, _ = run(capsys, "report", "2", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["size"] == 15 and data["order"] == 7


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["report", "6", "2"], "6 is not a prime power"),
        (["report", "2", "0"], ""),
        (["report", "2"], "need q and n"),
        (["report", "x", "2"], "integers"),
        (["report", "2", "3", "--format", "csv"], "--format"),
        (["frobnicate"], ""),
        (["verify", "--n", "5-1"], "empty n range"),
        (["verify", "--n", "abc"], "bad n range"),
        (["verify", "--q", "2,6"], "not a prime power"),
        (["verify", "--q", "2", "--n", "3", "--budget-vertices", "0"], "positive"),
        (["verify", "--q", "2", "--n", "3", "--inject-fault", "nope"], "unknown fault"),
        (["table", "--n", "0-2"], "dimensions start at 1"),
        (["export", "2", "20", "dot"], "budget"),
        (["export", "2", "2", "png"], "unknown export format"),
        (["export", "2", "2"], "needs a format"),
    ],
)
def test_usage_errors_exit_two(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_bad_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("NZC_BUDGET_VERTICES", "lots")
    code, _, err = run(capsys, "export", "2", "2", "edgelist")
    assert code == 2 and "NZC_BUDGET_VERTICES" in err


def test_env_budget_limits_export(capsys, monkeypatch):
    monkeypatch.setenv("NZC_BUDGET_VERTICES", "5")
    assert run(capsys, "export", "2", "3", "edgelist")[0] == 2
    assert run(capsys, "export", "2", "2", "edgelist")[0] == 0
    # the flag wins over the environment
    assert run(capsys, "export", "2", "3", "edgelist", "--budget-vertices", "7")[0] == 0


def test_env_budget_skips_verify_graphs(capsys, monkeypatch):
    monkeypatch.setenv("NZC_BUDGET_VERTICES", "3")
    code, out, _ = run(capsys, "verify", "--q", "2", "--n", "3")
    assert code == 0 and "SKIPPED graph skipped at (2,3)" in out


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--q", "2", "--n", "3")
    assert code == 0
    assert out.splitlines()[-1].startswith("OK: 1 grid points")


def test_verify_small_grid_with_known_defects(capsys):
    code, out, _ = run(capsys, "verify", "--q", "2,3", "--n", "1-4")
    assert code == 1
    assert "taxonomy mismatch at (2,4): expected 0, actual 8" in out
    assert "middle_maximal mismatch at (3,2)" in out


def test_verify_injected_size_fault(capsys):
    code, out, _ = run(capsys, "verify", "--q", "2", "--n", "3", "--inject-fault", "size")
    assert code == 1
    assert "size mismatch at (2,3): expected 15, actual 16" in out


def test_verify_csv_and_json(capsys):
    code, out, _ = run(capsys, "verify", "--q", "3", "--n", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and {r["status"] for r in rows} <= {"PASS", "SKIPPED"}
    code, out, _ = run(capsys, "verify", "--q", "3", "--n", "3", "--json")
    assert json.loads(out)["summary"]["FAIL"] == 0


def test_export_edgelist_two_two(capsys):
    code, out, _ = run(capsys, "export", "2", "2", "edgelist")
    assert code == 0 and out == "1 3\n2 3\n"


def test_export_json_counts(capsys):
    code, out, _ = run(capsys, "export", "2", "3", "json")
    params, vertices, edges = read_json_export(out)
    assert code == 0 and params == GraphParams(2, 3)
    assert len(vertices) == 7 and len(edges) == 15


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3), (2, 5), (4, 2), (5, 1)])
def test_json_export_round_trips(capsys, q, n):
    g = build_graph(GraphParams(q, n))
    _, out, _ = run(capsys, "export", str(q), str(n), "json")
    _, vertices, edges = read_json_export(out)
    assert np.array_equal(rows_from_edges(g.vertex_count, edges), g.rows)
    expected = coeff_tuples(GraphParams(q, n))
    assert [tuple(v["coeffs"]) for v in vertices] == expected
    assert [v["id"] for v in vertices] == list(range(1, len(expected) + 1))
    assert all(v["support"] == [i + 1 for i, c in enumerate(v["coeffs"]) if c] for v in vertices)
    assert edges == sorted(edges) and all(u < v for u, v in edges)


def test_edgelist_round_trips(capsys):
    g = build_graph(GraphParams(3, 3))
    _, out, _ = run(capsys, "export", "3", "3", "edgelist")
    assert np.array_equal(rows_from_edges(g.vertex_count, read_edgelist(out)), g.rows)


def test_export_dot_shape(capsys):
    _, out, _ = run(capsys, "export", "2", "2", "dot")
    assert out == (
        'graph "nzc_q2_n2" {\n'
        '  1 [label="(1,0) k=1"];\n'
        '  2 [label="(0,1) k=1"];\n'
        '  3 [label="(1,1) k=2"];\n'
        "  1 -- 3;\n"
        "  2 -- 3;\n"
        "}\n"
    )


@pytest.mark.parametrize("fmt", ["dot", "json", "edgelist"])
def test_export_to_file_is_byte_stable(tmp_path, capsys, fmt):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "export", "3", "3", fmt, "--out", str(a))[0] == 0
    assert run(capsys, "export", "3", "3", "--format", fmt, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_unwritable_output_exits_three(tmp_path, capsys):
    code, _, err = run(capsys, "export", "2", "2", "dot", "--out", str(tmp_path / "missing" / "x.dot"))
    assert code == 3 and "cannot write" in err
    code, _, _ = run(capsys, "verify", "--q", "2", "--n", "2", "--out", str(tmp_path))
    assert code == 3


def table_csv(capsys, *argv):
    code, out, _ = run(capsys, "table", "--format", "csv", *argv)
    assert code == 0
    return list(csv.DictReader(io.StringIO(out)))


def test_table_columns(capsys):
    _, out, _ = run(capsys, "table", "--q", "3", "--n", "3", "--format", "csv")
    assert out.splitlines()[0] == ",".join(TABLE_COLUMNS)


def test_table_three_three(capsys):
    (row,) = table_csv(capsys, "--q", "3", "--n", "3")
    assert row["omega"] == "20" and row["omega_winner"] == "middle" and row["appendix_ineq"] == "true"


def test_table_binary_omega(capsys):
    rows = table_csv(capsys, "--q", "2", "--n", "2-4")
    assert [r["omega"] for r in rows] == ["2", "4", "8"]


def test_table_big_integers(capsys):
    (row,) = table_csv(capsys, "--q", "9", "--n", "7")
    assert int(row["order"]) == 9**7 - 1 == 4782968
    big = table_csv(capsys, "--q", "16", "--n", "40")[0]
    assert int(big["order"]) == 16**40 - 1


def test_table_text_and_json(capsys):
    code, out, _ = run(capsys, "table", "--q", "2", "--n", "1-3")
    assert code == 0 and out.splitlines()[0].split()[:3] == ["q", "n", "order"]
    code, out, _ = run(capsys, "table", "--q", "2", "--n", "1-3", "--json")
    assert [r["size"] for r in json.loads(out)] == [0, 2, 15]


def test_cliques_and_hamilton_commands(capsys):
    code, out, _ = run(capsys, "cliques", "2", "3")
    assert code == 0 and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "hamilton", "2", "2")
    assert code == 0 and out.startswith("not-hamiltonian")
    code, out, _ = run(capsys, "hamilton", "3", "2", "--seed", "4")
    assert out.startswith("cycle") and len(out.splitlines()[1].split()) == 8


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nzcgraph", "export", "2", "2", "edgelist"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "1 3\n2 3\n"
