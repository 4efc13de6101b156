import subprocess
import sys
from pathlib import Path

import pytest

from anyonsim.cli import fmt_complex, main

ROOT = Path(__file__).resolve().parents[1]
DEFAULT = str(ROOT / "protocols" / "default.proto")
EMPTY = str(ROOT / "protocols" / "empty.proto")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_branches_reports_two_fusion_outcomes(capsys):
    code, out, _ = run(capsys, "run", DEFAULT, "--mode", "branches", "--input", "00")
    assert code == 0
    firsts = {line.split()[3] for line in out.splitlines() if line.startswith("branch ")}
    assert firsts == {"0", "2"}
    assert "total weight: 1.000000000000" in out
    assert "verdict 2 gate1: match" in out and "verdict 0 gate2: match" in out


def test_run_empty_is_identity(capsys):
    code, out, _ = run(capsys, "run", EMPTY)
    assert code == 0 and "verdict - identity: match" in out


def test_run_sample_reproducible(capsys):
    a = run(capsys, "run", DEFAULT, "--mode", "sample", "--seed", "7", "--input", "24")
    b = run(capsys, "run", DEFAULT, "--mode", "sample", "--seed", "7", "--input", "24")
    assert a == b and a[0] == 0


def test_run_rejects_bad_scripts(capsys, tmp_path):
    bad = tmp_path / "bad.proto"
    bad.write_text("leaves 2 2\ntotal 0\nfuse 7\n")
    code, _, err = run(capsys, "run", str(bad))
    assert code == 2 and "out of range" in err
    bad.write_text("leaves 2 2\ntotal 0\nwiggle 1\n")
    code, _, err = run(capsys, "run", str(bad))
    assert code == 2 and "unknown instruction" in err
    code, _, _ = run(capsys, "run", str(tmp_path / "missing.proto"))
    assert code == 2


@pytest.mark.parametrize("target", ["gate1", "gate2", "recovery-algebra", "entangling", "sixj-zero", "pentagon"])
def test_verify_targets_pass(capsys, target):
    code, out, _ = run(capsys, "verify", "--target", target)
    assert code == 0 and out.startswith(f"{target}: pass")


def test_verify_details(capsys):
    _, out, _ = run(capsys, "verify", "--target", "entangling")
    assert "ranks 2 2" in out
    _, out, _ = run(capsys, "verify", "--target", "sixj-zero")
    assert "residual 0.000e+00" in out


def test_tolerance_override(capsys, monkeypatch):
    monkeypatch.setenv("ANYONSIM_TOL", "1e-30")
    code, out, _ = run(capsys, "verify", "--target", "gate1")
    assert code == 1 and "fail" in out
    monkeypatch.setenv("ANYONSIM_TOL", "nope")
    assert run(capsys, "verify", "--target", "gate1")[0] == 2


def test_tables(capsys):
    code, r, _ = run(capsys, "tables", "--what", "r", "--format", "tsv")
    assert code == 0
    row = next(line.split("\t") for line in r.splitlines() if line.startswith("2\t2\t2\t"))
    assert row[5:] == ["-0.5", "-0.866025403784"]
    _, sixj, _ = run(capsys, "tables", "--what", "sixj")
    assert "2\t2\t2\t2\t2\t2\t0\t0" in sixj.splitlines()
    _, again, _ = run(capsys, "tables", "--what", "sixj")
    assert again == sixj
    _, f, _ = run(capsys, "tables", "--what", "f")
    assert f.splitlines()[0].startswith("a\tb\tc\td")


def test_calibrate_empty_grid(capsys):
    code, _, err = run(capsys, "calibrate", "--grid", "empty")
    assert code == 2 and "empty" in err


def test_usage_errors(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "tables", "--what", "q")[0] == 2
    assert run(capsys)[0] == 2


def test_complex_format():
    assert fmt_complex(-0.5 + 1e-12j) == "-0.500000000+0.000000000i"
    assert fmt_complex(complex(-1e-13, -0.25)) == "0.000000000-0.250000000i"


def test_console_module_entry():
    res = subprocess.run([sys.executable, "-m", "anyonsim", "verify", "--target", "sixj-zero"], capture_output=True, text=True)
    assert res.returncode == 0 and "pass" in res.stdout
