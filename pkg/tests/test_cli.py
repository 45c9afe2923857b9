import os
import subprocess
import sys

import pytest

from biconic.cli import main
from biconic.specfile import parse_spec
from biconic.errors import ParseError

REPO = os.path.join(os.path.dirname(__file__), "..")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run_cli(args, cwd=REPO):
    return subprocess.run([sys.executable, "-m", "biconic.cli"] + args,
                          capture_output=True, text=True, cwd=cwd)


@pytest.mark.parametrize("fixture", ["paper-dp2", "smooth-fixture-1"])
def test_analyze_matches_golden(fixture, tmp_path):
    got = run_cli(["analyze", "--fixture", f"fixtures/{fixture}.surface"])
    assert got.returncode == 0, got.stderr
    with open(os.path.join(GOLDEN, f"{fixture}.analyze.txt")) as fh:
        assert got.stdout == fh.read()


def test_analyze_report_contents():
    got = run_cli(["analyze", "--fixture", "fixtures/paper-dp2.surface"])
    out = got.stdout
    assert "condition (b): VIOLATED" in out
    assert "condition (a): HOLDS (4)" in out
    assert "[1:0:0:1]" in out and "[1:0:0:-1]" in out
    assert out.count("f'_n not arithmetically surjective for all n >= 3") == 2
    got = run_cli(["analyze", "--fixture", "fixtures/smooth-fixture-1.surface"])
    assert "condition (a): HOLDS (4)" in got.stdout
    assert "condition (b): HOLDS" in got.stdout


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.surface"
    bad.write_text("id: x\nq: 1, 2, 0, 0, 0\nr1: 0,0,1,0,0,0\nr2: 0,1,0,0,0,0\n")
    got = run_cli(["analyze", "--fixture", str(bad)])
    assert got.returncode == 2
    assert "q" in got.stderr and "line 2" in got.stderr
    with pytest.raises(ParseError):
        parse_spec("id: x\nunknown_key: 3\n")
    with pytest.raises(ParseError):
        parse_spec("q: 1,2,3,4,5,6\n")  # missing id


def test_generate_deterministic(tmp_path):
    args = ["generate", "--fixture", "fixtures/paper-dp2.surface",
            "--depth", "2", "--branch", "5", "--height", "8"]
    a = run_cli(args + ["--out", str(tmp_path / "a")])
    b = run_cli(args + ["--out", str(tmp_path / "b")])
    assert a.returncode == b.returncode == 0
    with open(tmp_path / "a" / "paper-dp2.points.tsv") as fa, \
            open(tmp_path / "b" / "paper-dp2.points.tsv") as fb:
        ta, tb = fa.read(), fb.read()
    assert ta == tb
    assert ta.splitlines()[0] == "x\ty\tz\tw\tdepth\theight"
    assert ta.splitlines()[1].startswith("0\t1\t1\t-1\t0")


def test_steer_reflexive_cli(tmp_path):
    got = run_cli(["steer", "--fixture", "fixtures/smooth-fixture-1.surface",
                   "--prime", "11", "--precision", "1", "--depth", "5",
                   "--out", str(tmp_path)])
    assert got.returncode == 0, got.stderr
    assert "result: success" in got.stdout
    assert "congruence: verified exactly" in got.stdout
    node_lines = [ln for ln in got.stdout.splitlines() if ln.startswith("    depth: ")]
    assert len(node_lines) == 6  # path nodes, depth 0..5


def test_certify_cli(tmp_path):
    got = run_cli(["certify", "--fixture", "fixtures/paper-dp2.surface",
                   "--point", "1,0,0,1", "--out", str(tmp_path)])
    assert got.returncode == 0
    assert "verdict: f'_n not arithmetically surjective for all n >= 3" in got.stdout
    assert "L1: Q(sqrt(-2))" in got.stdout
    assert "L2: Q(sqrt(2))" in got.stdout
    got = run_cli(["certify", "--fixture", "fixtures/paper-dp2.surface",
                   "--point", "0,1,1,-1", "--out", str(tmp_path)])
    assert got.returncode == 0
    assert "certificate: none" in got.stdout
    assert "condition 1 fails" in got.stdout


def test_probe_cli_and_threshold(tmp_path):
    args = ["probe", "--fixture", "fixtures/smooth-fixture-1.surface",
            "--primes", "11", "--precision", "1", "--depth", "3",
            "--retries", "8", "--out", str(tmp_path)]
    got = run_cli(args)
    assert got.returncode == 0, got.stderr
    assert "total_smooth_classes: 144" in got.stdout
    # threshold gate: an unreachable 101% forces exit code 4
    got = run_cli(args + ["--threshold", "101"])
    assert got.returncode == 4


def test_probe_deterministic(tmp_path):
    # identical configs (including --out) give byte-identical reports
    args = ["probe", "--fixture", "fixtures/smooth-fixture-1.surface",
            "--primes", "11", "--precision", "1", "--depth", "2",
            "--retries", "6", "--out", str(tmp_path / "a")]
    a = run_cli(args)
    b = run_cli(args)
    assert a.stdout == b.stdout and a.stdout


def test_domain_error_exit_code(tmp_path):
    bad = tmp_path / "deg.surface"
    bad.write_text("id: deg\nq: 0,0,0,0,0,0\nr1: 1,0,0,0,0,0\nr2: 1,0,0,0,0,0\n")
    got = run_cli(["analyze", "--fixture", str(bad)])
    assert got.returncode == 3
    assert "DegenerateData" in got.stderr


def test_main_entry_importable():
    assert main(["certify", "--fixture", os.path.join(REPO, "fixtures", "paper-dp2.surface"),
                 "--point", "1,0,0,-1", "--out", "/tmp/biconic-test-out"]) == 0
