import json
import os
import shutil
import subprocess
import sys
import time

import pytest

from syzlab.acceptance import corpus_ring
from syzlab.cli import execute, run, strip_timestamp
from syzlab.homology import hom_module
from syzlab.invariants import hilbert
from syzlab.modexpr import ExprError, describe_module, module_from_description, parse_module
from syzlab.rings import free_module
from syzlab.runner import default_golden_dir, load_jobs, run_job


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def result(capsys, *argv):
    code, out, err = cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)["result"]


def test_classify(capsys):
    r = result(capsys, "ring", "classify", "--ring", "r1")
    assert r == {"cm": True, "depth": 1, "dim": 1, "embdim": 2, "gorenstein": True, "minMult": True,
                 "multiplicity": 2, "regular": False, "type": 1}


def test_envelope_shape(capsys):
    code, out, _ = cli(capsys, "hilbert", "--ring", "r2")
    rep = json.loads(out)
    assert sorted(rep) == ["command", "result", "ring", "timestamp", "version"]
    assert rep["command"] == "hilbert" and rep["ring"]["ideal"] == ["x^2", "x*y", "y^2"]
    assert out == json.dumps(rep, sort_keys=True, indent=2) + "\n"


def test_ext_table(capsys):
    r = result(capsys, "ext", "--ring", "r1", "--M", "(x)", "--N", "(x)", "--range", "1..6")
    assert r["dims"] == [0, 1, 0, 1, 0, 1] and r["longestZeroRun"] == 1
    r = result(capsys, "ext", "--ring", "r1", "--M", "R", "--N", "R", "--range", "0..1")
    assert r["dims"] == ["inf", 0]


def test_omega_scan(capsys):
    r = result(capsys, "check", "gorenstein-omega-scan", "--ring", "r1", "--nmax", "3")
    assert r["status"] == "found" and r["window"] == [0, 0] and r["agreement"]
    r = result(capsys, "check", "gorenstein-omega-scan", "--ring", "r2", "--nmax", "3")
    assert r["status"] == "not-found" and r["agreement"]


def test_text_output(capsys, tmp_path):
    code, out, _ = cli(capsys, "betti", "--ring", "r3", "--format", "text")
    assert code == 0 and "total: 1 2 1" in out
    target = tmp_path / "ext.txt"
    code, out, _ = cli(capsys, "tor", "--ring", "r1", "--M", "k", "--N", "k", "--range", "0..2",
                       "--format", "text", "-o", str(target))
    assert code == 0 and out == ""
    assert "longest zero run" in target.read_text()


def test_exit_codes(capsys, tmp_path):
    # hypotheses not met
    code, out, err = cli(capsys, "check", "regularity", "--ring", "r1", "--M", "(x)", "--N", "(x)")
    assert code == 1 and "refused" in err
    assert json.loads(out)["refused"] is True
    # input errors
    assert cli(capsys, "hilbert", "--ring", str(tmp_path / "missing.json"))[0] == 2
    assert cli(capsys, "hilbert", "--ring", "r1", "--M", "R^")[0] == 2
    assert cli(capsys, "ext", "--ring", "r1", "--M", "k", "--N", "k", "--range", "3..1")[0] == 2
    code, _, err = cli(capsys, "check", "takahashi", "--ring", "r1", "--ell", "x")
    assert code == 2 and "witness y" in err
    bad = json.dumps({"vars": ["x", "y"], "ideal": ["x^2 + y"]})
    assert cli(capsys, "ring", "classify", "--ring", bad)[0] == 2
    assert cli(capsys, "nosuchcommand")[0] == 2


def test_exploratory_flag(capsys):
    code, out, _ = cli(capsys, "check", "regularity", "--ring", "r1", "--M", "(x)", "--N", "(x)",
                       "--bound", "4", "--exploratory")
    r = json.loads(out)["result"]
    assert code == 0 and r["exploratory"] and r["agreement"]


def test_disagreement_exit_code(monkeypatch, capsys):
    import syzlab.cli as cli_mod

    monkeypatch.setattr(cli_mod, "classify", lambda ring: type("C", (), {"to_json": lambda self: {
        "agreement": False}})())
    assert cli(capsys, "ring", "classify", "--ring", "r1")[0] == 3


def test_output_is_deterministic_modulo_timestamp():
    a = execute(["check", "gorenstein-ext", "--ring", "r1", "--bound", "4"])
    b = execute(["check", "gorenstein-ext", "--ring", "r1", "--bound", "4"])
    assert a[0] == b[0] == 0
    assert strip_timestamp(a[1]) == strip_timestamp(b[1])
    assert "timestamp" not in strip_timestamp(a[1])


def test_degree_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("SYZLAB_DEGREE_CAP", "2")
    r = result(capsys, "tor", "--ring", "r2", "--M", "k", "--N", "k", "--range", "0..4")
    assert r["degreeCap"] == 2
    assert all(int(d) <= 2 for t in r["graded"].values() for d in t)


def test_module_description_roundtrip(capsys, tmp_path):
    R = corpus_ring("r1")
    term = parse_module(R, "R/(x) + (x, y) + syz(2, k)")
    desc = describe_module(term.module)
    again = module_from_description(R, json.loads(json.dumps(desc))).module
    assert hilbert(again) == hilbert(term.module)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(desc))
    a = result(capsys, "betti", "--ring", "r1", "--M", f"@{path}", "--nmax", "3")
    b = result(capsys, "betti", "--ring", "r1", "--M", "R/(x) + (x, y) + syz(2, k)", "--nmax", "3")
    assert a["betti"] == b["betti"]


def test_expression_language():
    R = corpus_ring("r1")
    assert parse_module(R, "R^3").module.rank == 3
    assert parse_module(R, "omega").module.rank == 1
    t = parse_module(R, "img(1, 1; kill=0)")
    assert t.image_spec == [(1, 2)] and t.kill == (0,)
    assert t.syzygy_image().certified
    assert parse_module(R, "(x)").syzygy_image() is None
    for bad in ("R^", "syz(1, k", "img()", "foo", "R/(x", "(x + )"):
        with pytest.raises(ExprError):
            parse_module(R, bad)
    with pytest.raises(ExprError):
        module_from_description(R, {"shifts": [0], "relations": [["x", "y"]]})
    H = hom_module(parse_module(R, "(x)").module, free_module(R, 1)).module
    assert H.rank == 1


def test_golden_jobs_match():
    golden = default_golden_dir()
    for job in load_jobs():
        code, text = run_job(job)
        assert code == job.get("exit", 0), job["name"]
        assert text == (golden / f"{job['name']}.json").read_text(), job["name"]


def test_corrupted_golden_exits_3(tmp_path):
    gdir = tmp_path / "golden"
    shutil.copytree(default_golden_dir(), gdir)
    f = gdir / "r1-ext-x-x.json"
    data = json.loads(f.read_text())
    data["report"]["result"]["dims"][0] = 7
    f.write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")
    proc = subprocess.run([sys.executable, "-m", "syzlab.cli", "corpus", "run", "--golden", str(gdir),
                           "--skip-acceptance"], capture_output=True, text=True)
    assert proc.returncode == 3
    assert "r1-ext-x-x (computed)" in proc.stderr and '-        7,' in proc.stderr


def test_seed_determinism(capsys):
    argv = ["corpus", "run", "--skip-acceptance", "--seed", "5"]
    outs = []
    for _ in range(2):
        code, out, _ = cli(capsys, *argv)
        assert code == 0
        outs.append(strip_timestamp(json.loads(out)))
    assert outs[0] == outs[1]


def test_acceptance_fingerprints_follow_the_seed():
    from syzlab.acceptance import socle_lemma_fuzz

    a, b, c = socle_lemma_fuzz(3, 5), socle_lemma_fuzz(3, 5), socle_lemma_fuzz(4, 5)
    assert a == b and a[1]["fingerprint"] != c[1]["fingerprint"]


@pytest.mark.skipif(shutil.which("syzlab") is None, reason="console script not installed")
def test_console_script():
    env = dict(os.environ, SYZLAB_DEGREE_CAP="3")
    proc = subprocess.run(["syzlab", "tor", "--ring", "r1", "--M", "k", "--N", "k", "--range", "0..2"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["degreeCap"] == 3
    proc = subprocess.run(["syzlab", "--version"], capture_output=True, text=True)
    assert proc.stdout.startswith("syzlab ")


def test_full_corpus_run_within_budget():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "syzlab.cli", "corpus", "run"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    assert proc.returncode == 0, proc.stderr
    summary = json.loads(proc.stdout)["result"]
    assert summary["ok"] and len(summary["acceptance"]) == 11
    assert all(j["golden"] == "match" for j in summary["jobs"])
    assert elapsed < 60
