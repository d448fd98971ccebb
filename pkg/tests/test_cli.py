import json
import os
import subprocess
import sys

import pytest

from artifact import cli
from artifact.polyring import ideal_from_json, ideal_from_text


def run(args, tmp_path):
    """Run the CLI in-process, capturing stdout."""
    out = tmp_path / "out.txt"
    code = cli.main(list(args) + ["-o", str(out)])
    return code, out.read_text(encoding="utf-8") if out.exists() else ""


@pytest.mark.parametrize("target", ["un-full", "un-reduced", "curve", "curve-homog", "plucker", "e-algebra"])
@pytest.mark.parametrize("fmt", ["json", "ideal-text", "cas-text"])
def test_emit_every_target_and_format(tmp_path, target, fmt):
    args = ["emit", target, "--n", "5", "--format", fmt]
    code, text = run(args, tmp_path)
    assert code == 0 and text.endswith("\n") and "\r" not in text
    code2, text2 = run(args, tmp_path)
    assert text2 == text
    if target == "e-algebra":
        return
    if fmt == "json":
        assert ideal_from_json(text).gens
    elif fmt == "ideal-text":
        assert ideal_from_text(text).ring.nvars > 0


def test_emit_examples(tmp_path):
    _, text = run(["emit", "un-reduced", "--n", "6", "--format", "cas-text"], tmp_path)
    body = text.split("ideal(", 1)[1]
    assert body.count(",\n") + 1 == 7
    _, text = run(["emit", "plucker"], tmp_path)
    assert len([ln for ln in text.splitlines() if ln.startswith("gen ")]) == 5
    _, text = run(["emit", "curve", "--n", "3"], tmp_path)
    assert [ln for ln in text.splitlines() if ln.startswith("gen ")] == [
        "gen g1 = x2*x3^2 - x2^2*x3 - a*x2*x3 - c*x3 - b*x2 - d"]
    _, text = run(["emit", "e-algebra", "--n", "5", "--format", "json"], tmp_path)
    assert len(json.loads(text)["basis"]) == 22


def test_emit_usage_errors(tmp_path):
    assert run(["emit", "un-full", "--n", "2"], tmp_path)[0] == 2
    assert run(["emit", "un-full"], tmp_path)[0] == 2
    assert run(["emit", "e-algebra", "--n", "1"], tmp_path)[0] == 2
    assert run(["emit", "plucker", "--field", "Fp:10"], tmp_path)[0] == 2
    assert run(["emit", "nothing"], tmp_path)[0] == 2


def test_verify_example_and_report_schema(tmp_path):
    code, text = run(["verify", "hilbert-series", "--n", "6", "--D", "6"], tmp_path)
    assert code == 0
    rep = json.loads(text)
    assert rep["summary"] == {"pass": 1, "fail": 0, "truncated": 0}
    assert rep["verdicts"][0]["params"]["D"] == 6
    assert text == json.dumps(rep, sort_keys=True, indent=2) + "\n"


def test_verify_blowup_with_field(tmp_path):
    code, text = run(["verify", "blowup-points", "--n", "6", "--field", "Fp:101"], tmp_path)
    assert code == 0
    assert json.loads(text)["verdicts"][0]["witness"]["solutions_per_prime"] == {"101": 5}


def test_verify_reproducible(tmp_path):
    args = ["verify", "sn-action", "--n", "5", "--seed", "7", "--no-timing"]
    assert run(args, tmp_path)[1] == run(args, tmp_path)[1]


def test_exit_codes(tmp_path):
    assert run(["verify", "no-such-check"], tmp_path)[0] == 2
    assert run(["verify", "wheel", "--n", "x..y"], tmp_path)[0] == 2
    assert run(["verify", "charp-fields"], tmp_path)[0] == 1
    assert run(["verify", "diamond-symbolic", "--n", "5", "--degree-cap", "2"], tmp_path)[0] == 3
    assert run(["verify", "wheel", "--n", "5", "--mutate"], tmp_path)[0] == 1


def test_verify_all_n5_with_worker_pool(tmp_path, monkeypatch):
    monkeypatch.setenv("MODULI_THREADS", "4")
    code, text = run(["verify", "all", "--n", "5", "--seed", "42", "--no-timing"], tmp_path)
    rep = json.loads(text)
    failing = {v["check"] for v in rep["verdicts"] if v["status"] != "pass"}
    assert failing == {"charp-fields"}  # the cusp@3 table entry
    assert code == 1
    checks = {v["check"] for v in rep["verdicts"]}
    assert {"hochschild", "ainf", "e-algebra", "diamond-symbolic", "section-curve"} <= checks


def test_hochschild_subcommand(tmp_path):
    code, text = run(["hochschild", "--n", "5", "--j", "2", "--r", "1..2"], tmp_path)
    assert code == 0
    assert [r["dim"] for r in json.loads(text)["results"]] == [6, 0]
    assert run(["hochschild", "--n", "5", "--r", "7"], tmp_path)[0] == 2


def test_bench_subcommand(tmp_path):
    code, text = run(["bench", "wheel", "--n", "5"], tmp_path)
    assert code == 0
    assert json.loads(text)["timings"][0]["status"] == "pass"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "artifact", "emit", "curve", "--n", "3"],
                         capture_output=True, text=True, env={**os.environ})
    assert res.returncode == 0 and "x2*x3^2" in res.stdout
