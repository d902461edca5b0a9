import json
import subprocess
import sys

import pytest

from mbea.cli import main
from mbea.graphs import Graph, complete_graph, write_edge_list


@pytest.fixture
def k5_file(tmp_path):
    path = tmp_path / "k5.edges"
    path.write_text(write_edge_list(complete_graph(5)))
    return path


def test_gen_writes_parseable_file(tmp_path, capsys):
    out = tmp_path / "g.edges"
    assert main(["gen", "--n", "20", "--c", "2.0", "--seed", "3", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("20 20\n")


def test_gen_stdout_and_determinism(capsys):
    assert main(["gen", "--n", "10", "--c", "1.0", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--n", "10", "--c", "1.0", "--seed", "5"]) == 0
    assert capsys.readouterr().out == first


def test_gen_rejects_impossible_density(capsys):
    assert main(["gen", "--n", "4", "--c", "9.0"]) == 1


def test_solve_k5(k5_file, tmp_path, capsys):
    json_out = tmp_path / "rsg.json"
    dot_out = tmp_path / "rsg.dot"
    code = main(
        ["solve", str(k5_file), "--json-out", str(json_out), "--dot-out", str(dot_out)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "cover_size 4" in out
    assert "cases A:1 B:0 C:1 D:3 E:0" in out
    doc = json.loads(json_out.read_text())
    assert doc["n"] == 5
    assert sum(e["kind"] == "double" for e in doc["edges"]) == 1
    assert dot_out.read_text().startswith("graph rsg {")


def test_solve_single_edge(tmp_path, capsys):
    path = tmp_path / "e.edges"
    path.write_text("2 1\n0 1\n")
    assert main(["solve", str(path)]) == 0
    assert "cover_size 1" in capsys.readouterr().out


def test_solve_trace_lines(tmp_path, capsys):
    path = tmp_path / "p3.edges"
    path.write_text(write_edge_list(Graph(3, [(0, 1), (1, 2)])))
    assert main(["solve", str(path), "--trace"]) == 0
    out = capsys.readouterr().out
    assert "add 1 case B" in out


def test_oracle_c4(tmp_path, capsys):
    path = tmp_path / "c4.edges"
    path.write_text("4 4\n0 1\n0 3\n1 2\n2 3\n")
    assert main(["oracle", str(path), "--enumerate"]) == 0
    out = capsys.readouterr().out
    assert "min 2, 2 solutions" in out


def test_oracle_budget_exit_code(k5_file, capsys):
    assert main(["oracle", str(k5_file), "--oracle-budget", "3"]) == 3


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.edges"
    path.write_text("2 1\n0 0\n")
    assert main(["solve", str(path)]) == 2
    assert "self-loop" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.edges")]) == 2


def test_usage_error_exit_code(capsys):
    assert main(["solve"]) == 1
    assert main(["frobnicate"]) == 1


def test_export_roundtrip(k5_file, tmp_path, capsys):
    json_out = tmp_path / "rsg.json"
    main(["solve", str(k5_file), "--json-out", str(json_out)])
    capsys.readouterr()
    assert main(["export", str(json_out)]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph rsg {") and "--" in dot


def test_experiment_csv_and_mirror(tmp_path, capsys):
    out = tmp_path / "cov.csv"
    code = main(
        [
            "exp-coverage",
            "--c", "1.0", "--c", "2.0",
            "--n", "30",
            "--instances", "4",
            "--seed", "11",
            "--out", str(out),
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 3
    mirror = json.loads((tmp_path / "cov.json").read_text())
    assert len(mirror) == 2


def test_experiment_json_format(capsys):
    code = main(
        ["exp-backbones", "--c", "0.0", "--n", "10", "--instances", "2", "--format", "json"]
    )
    assert code == 0
    docs = json.loads(capsys.readouterr().out)
    assert docs[0]["pos_frac"] == 1.0


def test_exp_error_runs(capsys):
    code = main(
        ["exp-error", "--c", "2.0", "--n", "20", "--instances", "5", "--seed", "1"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("c,n,instances")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mbea", "gen", "--n", "6", "--c", "1.0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("6 3\n")
