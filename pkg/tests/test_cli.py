import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from graphprony.cli import main
from graphprony.simplicial import Chain, hodge_decomposition, triangle_strip


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


@pytest.fixture
def path20_files(tmp_path, capsys):
    _, g = run(capsys, "gen", "path", 20)
    gp = write(tmp_path, "g.json", g)
    _, sig = run(capsys, "synth", "--graph", gp, "--support", "3,15", "--coeffs", "1,0.2")
    return gp, write(tmp_path, "f.json", sig), sig


def test_repro_example(capsys):
    code, out = run(capsys, "repro-example")
    assert code == 0
    assert out["max_eigenvalue_error"] < 1e-10 and out["max_component_error"] < 1e-10
    assert out["matched_support"] == [[3], [15]]
    assert out["samples"][0] == pytest.approx(0.341, abs=5e-4)


def test_repro_csv(tmp_path, capsys):
    assert main(["repro-example", "--csv", str(tmp_path)]) == 0
    capsys.readouterr()
    for name in ("coefficients.csv", "signal.csv", "components.csv"):
        rows = list(csv.reader((tmp_path / name).open()))
        assert len(rows) > 1
    assert len(list(csv.reader((tmp_path / "signal.csv").open()))) == 21


def test_gen_synth_pipeline(path20_files):
    _, _, sig = path20_files
    assert len(sig["values"]) == 20
    assert sig["values"][0] == pytest.approx(0.341, abs=5e-4)


def test_gen_er_connected(capsys):
    code, g = run(capsys, "gen", "er", 12, "--p", 0.3, "--seed", 4)
    assert code == 0 and g["n"] == 12
    _, again = run(capsys, "gen", "er", 12, "--p", 0.3, "--seed", 4)
    assert again == g


def test_recover_one(path20_files, capsys):
    gp, fp, _ = path20_files
    code, out = run(capsys, "recover", "one", "--graph", gp, "--signal", fp, "--vertex", 1,
                    "--sparsity", 2, "--match")
    assert code == 0
    assert [list(c) for c in out["matched_support"]] == [[3], [15]]


def test_recover_one_missing_samples(path20_files, tmp_path, capsys):
    gp, _, _ = path20_files
    sp = write(tmp_path, "s.json", [{"vertex": 1, "value": 0.3}, {"vertex": 2, "value": 0.2}])
    code, out = run(capsys, "recover", "one", "--graph", gp, "--samples", sp, "--vertex", 1,
                    "--sparsity", 2)
    assert code == 2
    assert out["details"]["missing"] == [3, 4]


def test_recover_multi(path20_files, tmp_path, capsys):
    gp, fp, _ = path20_files
    plan = write(tmp_path, "p.json", {"anchors": [{"vertex": 1, "radius": 1}, {"vertex": 12, "radius": 1}]})
    code, out = run(capsys, "recover", "multi", "--graph", gp, "--signal", fp, "--plan", plan,
                    "--sparsity", 2)
    assert code == 0 and len(out["eigenvalues"]) == 2


def test_inline_plan(path20_files, capsys):
    gp, fp, _ = path20_files
    plan = '{"anchors": [{"vertex": 1, "radius": 1}, {"vertex": 12, "radius": 1}]}'
    code, out = run(capsys, "recover", "multi", "--graph", gp, "--signal", fp, "--plan", plan, "--sparsity", 2)
    assert code == 0 and len(out["eigenvalues"]) == 2


def test_umbrella_exit_1(tmp_path, capsys):
    n = 8
    _, g = run(capsys, "gen", "umbrella", n)
    gp = write(tmp_path, "g.json", g)
    _, sig = run(capsys, "synth", "--graph", gp, "--support", "1,2,8", "--coeffs", "1,1,1")
    fp = write(tmp_path, "f.json", sig)
    plan = write(tmp_path, "p.json", {"anchors": [{"vertex": n, "radius": 2}, {"vertex": n - 1, "radius": 1}]})
    code, out = run(capsys, "recover", "multi", "--graph", gp, "--signal", fp, "--plan", plan,
                    "--sparsity", 3)
    assert code == 1
    assert out["error"] == "RankDeficiencyError"


def test_recover_simplicial_split(tmp_path, capsys):
    cx = triangle_strip(10)
    hd = hodge_decomposition(cx, 1)
    f = hd.up_vectors[:, 2] + 0.5 * hd.up_vectors[:, 6] + 0.8 * hd.dn_vectors[:, 4]
    cp = write(tmp_path, "c.json", cx.to_dict())
    chp = write(tmp_path, "ch.json", Chain(cx, 1, f).to_dict())
    code, out = run(capsys, "recover", "simplicial", "--complex", cp, "--chain", chp, "--k", 1,
                    "--mode", "split", "--face", "5,6", "--sparsity", 3)
    assert code == 0
    assert np.allclose(out["up"]["eigenvalues"], hd.up_values[[2, 6]], atol=1e-8)
    assert not out["harmonic_detected"]


def test_decode(path20_files, capsys):
    gp, fp, _ = path20_files
    code, out = run(capsys, "decode", "--graph", gp, "--signal", fp, "--W", "1,2,3,4", "--s-max", 2)
    assert code == 0
    assert out["support"] == [3, 15]
    assert np.allclose(out["coefficients"], [1.0, 0.2], atol=1e-8)


def test_collide(capsys):
    code, out = run(capsys, "collide", "--dft", 6, "--W", "1,3,5", "--support", "1,4")
    assert code == 0
    f = np.array(out["f_values"]) @ [1, 1j]
    g = np.array(out["g_values"]) @ [1, 1j]
    W = [w - 1 for w in out["W"]]
    assert np.allclose(f[W], g[W], atol=1e-8)
    assert not np.allclose(f, g)


@pytest.mark.parametrize("n,expected", [(5, True), (4, False), (6, False)])
def test_chebotarev(capsys, n, expected):
    code, out = run(capsys, "chebotarev", "--dft", n)
    assert code == 0 and out["chebotarev"] is expected
    if not expected:
        assert out["witness"] is not None


def test_uniqueness(capsys):
    code, out = run(capsys, "uniqueness", "--dft", 5, "--W", "1,2,3,4", "--sparsity", 2)
    assert code == 0 and out["unique"] is True


def test_bad_input_exit_2(tmp_path, capsys):
    code, out = run(capsys, "synth", "--graph", tmp_path / "absent.json", "--support", "1", "--coeffs", "1")
    assert code == 2 and "error" in out


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "graphprony.cli", "repro-example"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
