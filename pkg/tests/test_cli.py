from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

from ggcode import cli
from ggcode.codes import dump_code, hamming_binary
from ggcode.errors import UsageError
from ggcode.graphcode import dump_assignment, fixture_k333, k333_triangle
from ggcode.graphs import complete_multipartite, dump_graph


def run_json(argv):
    status, text = cli.run(cli.parse_config(argv + ["--format", "json"]))
    return status, json.loads(text)


def test_parse_config_defaults_to_graphcode_group():
    cfg = cli.parse_config(["example", "k777"])
    assert (cfg.group, cfg.subcommand, cfg.name) == ("graphcode", "example", "k777")
    assert cfg.engine == "auto" and cfg.fmt == "text" and cfg.workers == 1


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("GGCODE_WORKERS", "3")
    assert cli.parse_config(["example", "k333"]).workers == 3
    assert cli.parse_config(["example", "k333", "--workers", "2"]).workers == 2
    monkeypatch.setenv("GGCODE_WORKERS", "many")
    with pytest.raises(UsageError):
        cli.parse_config(["example", "k333"])


@pytest.mark.parametrize(
    "argv,token",
    [
        (["example", "k333", "--frobnicate"], "--frobnicate"),
        (["example", "k999"], "k999"),
        (["teleport"], "teleport"),
        (["build", "--graph", "complete:3,3", "--inner", "golay:23"], "golay"),
        (["build", "--graph", "wheel:5", "--inner", "even:6"], "wheel:5"),
    ],
)
def test_usage_errors_name_the_offending_token(argv, token, capsys):
    assert cli.main(argv) == 2
    assert token in capsys.readouterr().err


def test_no_arguments_is_a_usage_error():
    assert cli.main([]) == 2


def test_example_k333_report():
    status, out = run_json(["example", "k333"])
    assert status == 0
    assert (out["N"], out["K"], out["D"], out["bound"]) == (27, 19, 3, 2)
    assert out["engine"] == "exhaustive"
    assert out["order_convention"].startswith("canonical")
    assert all(c["match"] for c in out["paper_claim_checks"])


def test_json_output_is_deterministic():
    argv = ["build", "--graph", "complete:2,4", "--inner", "even:4", "--format", "json"]
    first = cli.run(cli.parse_config(argv))[1]
    second = cli.run(cli.parse_config(argv))[1]
    assert first == second


def test_claim_mismatch_exits_one(monkeypatch):
    monkeypatch.setitem(cli.PUBLISHED_CLAIMS, "k333", {"N": 27, "K": 20})
    status, out = run_json(["example", "k333"])
    assert status == 1
    assert out["findings"] == ["claimed K = 20, computed 19"]


def test_capacity_error_exits_three(tmp_path, capsys):
    code = tmp_path / "ternary.txt"
    code.write_text("parity\n1 6 3\n1 1 1 1 1 1\n")
    argv = ["params", "--graph", "complete:3,3", "--inner", str(code)]
    assert cli.main(argv) == 3
    assert "exhaustive" in capsys.readouterr().err


def test_inner_spec_language():
    (code,) = cli.parse_code_specs("dsum:hamming:3,hamming:3")
    assert (code.n, code.k) == (14, 8)
    codes = cli.parse_code_specs("hamming:3,even:6,rep:2")
    assert [(c.n, c.k) for c in codes] == [(7, 4), (6, 5), (2, 1)]
    with pytest.raises(UsageError):
        cli.parse_code_specs("dsum:hamming:3")
    with pytest.raises(UsageError):
        cli.parse_code_specs("hamming:x")


def test_build_params_bound():
    argv = ["--graph", "complete:3,7", "--inner", "dsum:hamming:3,hamming:3"]
    status, out = run_json(["bound"] + argv)
    assert status == 0 and out["bound"] == "9/2" and out["lambda2"] == 0
    status, out = run_json(["params", "--engine", "bz", "--workers", "2"] + argv)
    assert (out["N"], out["K"], out["D"], out["engine"]) == (147, 48, 9, "bz")


def test_time_limit_reports_bracket():
    status, out = run_json(["params", "--example", "k777", "--engine", "bz", "--time-limit", "0"])
    assert status == 0 and "D" not in out
    lower, upper = out["D_bracket"]
    assert lower <= 9 <= upper


def test_example_excludes_graph():
    with pytest.raises(UsageError):
        cli.run(cli.parse_config(["params", "--example", "k333", "--graph", "complete:3,3"]))


def test_files_end_to_end(tmp_path):
    graph = tmp_path / "g.txt"
    graph.write_text(dump_graph(complete_multipartite(3, 3)))
    code = tmp_path / "c.txt"
    code.write_text("parity\n1 6 2\n1 1 1 1 1 1\n")
    word = tmp_path / "w.txt"
    word.write_text(dump_assignment(k333_triangle(fixture_k333())))
    base = ["--graph", str(graph), "--inner", str(code)]
    status, out = run_json(["verify", str(word)] + base)
    assert out["member"] is True and out["weight"] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text(" ".join(["1"] + ["0"] * 26))
    status, out = run_json(["verify", str(bad)] + base)
    assert out["member"] is False and out["failing_vertices"] == [1, 4]
    status, out = run_json(["certify", "--codeword", str(word)] + base)
    assert status == 0 and out["certificate"]["ok"] is True


def test_certify_named_witness():
    status, out = run_json(["certify", "--example", "k333", "--codeword", "triangle"])
    cert = out["certificate"]
    assert status == 0 and cert["a"] == 1 and cert["x"] == [2, -1, -1] * 3
    assert cert["edge_bounds"][0]["support_to_support"] == 2
    with pytest.raises(UsageError):
        cli.run(cli.parse_config(["certify", "--example", "k333", "--codeword", "nope"]))


def test_report_file(tmp_path):
    path = tmp_path / "r.json"
    status, text = cli.run(cli.parse_config(["example", "k333", "--report", str(path)]))
    assert json.loads(path.read_text())["D"] == 3
    assert "D: 3" in text


def test_codes_group(tmp_path):
    status, out = run_json(["codes", "builtin", "hamming", "--r", "4"])
    assert (out["n"], out["k"], out["d"]) == (15, 11, 3)
    a = tmp_path / "h.txt"
    a.write_text(dump_code(hamming_binary(3)))
    status, out = run_json(["codes", "dsum", str(a), "even:4"])
    assert (out["n"], out["k"], out["d"]) == (11, 7, 2)
    status, out = run_json(["codes", "info", str(a)])
    assert out["d"] == 3
    assert cli.main(["codes", "builtin", "even"]) == 2


def test_graph_group(tmp_path):
    status, out = run_json(["graph", "spectrum", "complete:3,3"])
    assert out["eigenvalues"] == [6, 0, 0, 0, 0, 0, 0, -3, -3] and out["lambda2"] == 0
    status, out = run_json(["graph", "spectrum", "complete:3,3", "--numeric"])
    assert np.allclose(out["eigenvalues"], [6, 0, 0, 0, 0, 0, 0, -3, -3])
    broken = tmp_path / "g.txt"
    broken.write_text("partite 2 2\n1 3\n1 4\n2 3\n")
    status, out = run_json(["graph", "validate", str(broken)])
    assert out["valid"] is False and out["violations"]
    status, out = run_json(["graph", "info", "complete:3,7"])
    assert out["edges"] == 147 and out["regular_degree"] == 14


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "ggcode.cli", "example", "k333", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["D"] == 3
