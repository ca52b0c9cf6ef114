import json
import subprocess
import sys

import pytest

from klrwb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json", "--no-cache")
    return code, json.loads(out)


def test_dims_a2_table(capsys):
    code, data = run_json(capsys, "dims", "--beta", "1,1")
    assert code == 0
    corners = {(c["left"], c["right"]): c["series"]["dims"] for c in data["corners"]}
    assert corners[("12", "12")] == {"0": 1, "2": 2, "4": 3, "6": 4, "8": 5}
    assert corners[("12", "21")] == {"1": 1, "3": 2, "5": 3, "7": 4}
    assert len([k for k in corners if "*" not in k]) == 4


def test_dims_nilhecke_corner(capsys):
    code, data = run_json(capsys, "dims", "--quiver", "sl2", "--beta", "2", "--word", "11", "--word2", "11")
    assert code == 0
    (corner,) = data["corners"]
    assert corner["series"]["dims"] == {"-2": 1, "0": 3, "2": 5, "4": 7, "6": 9, "8": 11}


def test_dims_zero_weight(capsys):
    code, out, _ = run(capsys, "dims", "--beta", "0,0")
    assert code == 0
    assert "0:1" in out


def test_config_is_echoed(capsys):
    _, data = run_json(capsys, "dims", "--beta", "1,1", "--degree-bound", "4")
    cfg = data["config"]
    assert cfg["degree_bound"] == 4
    assert cfg["schema"] == 1
    assert cfg["quiver_label"] == "A2"


@pytest.mark.parametrize("argv", [
    ["dims", "--beta", "1,x"],
    ["dims", "--beta", "1,1,1"],
    ["dims", "--quiver", "no-such-quiver", "--beta", "1"],
    ["crystal", "--height", "99"],
    ["simples", "--beta", "3,3", "--height", "4"],
])
def test_usage_and_cap_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("klrwb")


def test_simples_a2(capsys):
    code, data = run_json(capsys, "simples", "--beta", "1,1")
    assert code == 0
    chars = sorted(tuple(s["character"]) for s in data["table"]["simples"])
    assert chars == [("12",), ("21",)]


def test_crystal_sl2_chain(capsys):
    code, data = run_json(capsys, "crystal", "--quiver", "sl2", "--height", "3")
    assert code == 0
    assert len(data["graph"]["nodes"]) == 4
    assert data["graph"]["edges"] == [[0, 1, "1"], [1, 2, "1"], [2, 3, "1"]]


def test_crystal_dot(capsys):
    code, out, _ = run(capsys, "crystal", "--quiver", "sl2", "--height", "2", "--dot")
    assert code == 0 and out.startswith("digraph")


def test_reflect_a2(capsys):
    code, data = run_json(capsys, "reflect", "--i", "1", "--fstring", "2")
    assert code == 0
    assert data["result"]["weight"] == [1, 1]
    assert data["result"]["eps"][0] == 0
    code, back = run_json(capsys, "reflect", "--i", "1", "--fstring", "1,2", "--inverse")
    assert code == 0
    assert back["result"]["string"] == ["2"]


def test_reflect_outside_domain_exits_1(capsys):
    code, data = run_json(capsys, "reflect", "--i", "1", "--fstring", "1")
    assert code == 1
    assert data["status"].startswith("undefined")


def test_verify_braid_a2(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "braid", "--quiver", "A2", "--out", str(tmp_path), "--no-cache")
    assert code == 0
    names = sorted(p.name for p in (tmp_path / "reports").iterdir())
    assert names == ["braid__A2__height=6.json", "summary.json"]
    assert (tmp_path / "timings.json").exists()


def test_verify_corrupted_quiver_exits_1(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "all", "--quiver", "A2_corrupted_Q", "--out", str(tmp_path), "--no-cache")
    assert code == 1
    summary = json.loads((tmp_path / "reports" / "summary.json").read_text())
    assert any(n.startswith("orientation__") for n in summary["failed"])


@pytest.mark.slow
def test_verify_tcorr_kronecker(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "tcorr", "--quiver", "Kronecker", "--height", "5",
                     "--out", str(tmp_path), "--no-cache")
    assert code == 0


def test_verify_cap_exit_code(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "monoidality", "--quiver", "Kronecker", "--height", "2",
                     "--module-cap", "3", "--out", str(tmp_path), "--no-cache")
    assert code == 2
    summary = json.loads((tmp_path / "reports" / "summary.json").read_text())
    assert summary["cap_exceeded"] and not summary["failed"]


def _report_bytes(root):
    return {p.name: p.read_bytes() for p in sorted((root / "reports").iterdir())}


def test_cache_does_not_change_reports(capsys, tmp_path):
    cache = tmp_path / "cache"
    outs = []
    for k, extra in enumerate([["--no-cache"], ["--cache-dir", str(cache)], ["--cache-dir", str(cache)]]):
        out = tmp_path / f"run{k}"
        code, _, _ = run(capsys, "verify", "quotients", "--quiver", "A2", "--height", "3",
                         "--out", str(out), *extra)
        assert code == 0
        outs.append(_report_bytes(out))
    assert outs[0] == outs[1] == outs[2]
    assert any(cache.rglob("*.pkl"))


def test_parallel_jobs_match_serial(capsys, tmp_path):
    a, b = tmp_path / "serial", tmp_path / "parallel"
    run(capsys, "verify", "saito", "--quiver", "A2", "--out", str(a), "--no-cache")
    run(capsys, "verify", "saito", "--quiver", "A2", "--out", str(b), "--no-cache", "--jobs", "2")
    assert _report_bytes(a) == _report_bytes(b)


def test_cache_clear(capsys, tmp_path):
    cache = tmp_path / "cache"
    run(capsys, "simples", "--beta", "1,1", "--cache-dir", str(cache))
    assert any(cache.rglob("*.pkl"))
    code, out, _ = run(capsys, "cache", "clear", "--cache-dir", str(cache))
    assert code == 0
    assert out.startswith("removed 1")
    assert not cache.exists()


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("KLRWB_CACHE", str(tmp_path / "envcache"))
    run(capsys, "simples", "--beta", "1,1")
    assert any((tmp_path / "envcache").rglob("*.pkl"))


def test_console_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "klrwb.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for flag in ("dims", "simples", "crystal", "reflect", "verify", "cache"):
        assert flag in proc.stdout


def test_verify_help_lists_defaults():
    proc = subprocess.run([sys.executable, "-m", "klrwb.cli", "verify", "--help"], capture_output=True, text=True)
    assert "default: 8" in proc.stdout
    assert "KLRWB_CACHE" in proc.stdout
