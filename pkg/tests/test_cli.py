import io
import subprocess
import sys

import pytest

from photonic_vqe.cli import EXIT_CONFIG, EXIT_OK, EXIT_PARSE, main
from photonic_vqe.io import parse_records

from conftest import DATA

HEIS = str(DATA / "heisenberg.txt")
HEH = str(DATA / "heh_strings.txt")
SCAN = str(DATA / "synthetic_scan.csv")


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_group_counts():
    code, out = run("group", "--hamiltonian", HEH)
    assert code == EXIT_OK
    assert "QWC: 4 settings" in out
    assert "GC_BELL: 3 settings" in out
    code, out = run("group", "--hamiltonian", HEIS, "--mode", "entangled")
    assert "GC_BELL: 1 setting (BELL)" in out


def test_bell_check():
    code, out = run("bell-check")
    assert code == EXIT_OK
    assert out.count("fidelity 1.000000000000") == 4
    code, out = run("bell-check", "--angles", "45,90,45,0,23.5,45,22.5,45")
    assert code == EXIT_OK
    # H6 sits in front of D1 and D2 only
    assert out.count("fidelity 1.000000000000") == 2
    assert "D1 -> psi+  fidelity 0.99" in out
    code, _ = run("bell-check", "--angles", "1,2,3")
    assert code == EXIT_CONFIG


def test_run_writes_reproducible_outputs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["run", "--hamiltonian", HEIS, "--trials", "2", "--shots", "900", "--max-iter", "40"]
    assert run(*args, "--out", str(a))[0] == EXIT_OK
    assert run(*args, "--out", str(b))[0] == EXIT_OK
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    assert "trace_VQE_P_1.txt" in names and "summary.csv" in names
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()
    header, rows = parse_records((a / "runs.csv").read_text(), [str, int, int, float])
    assert header == ["mode", "trial", "iterations", "final_energy"]
    assert len(rows) == 4 and all(1 <= r[2] <= 40 for r in rows)
    _, summ = parse_records((a / "summary.csv").read_text(), [str, str, float, float])
    assert [s[1] for s in summ] == ["Avg.", "Stdev.", "Avg.", "Stdev."]


def test_modes_share_initial_angles(tmp_path):
    run("run", "--hamiltonian", HEIS, "--trials", "1", "--shots", "exact", "--max-iter", "5", "--out", str(tmp_path))
    p = (tmp_path / "trace_VQE_P_0.txt").read_text().splitlines()[0].split()[1:7]
    e = (tmp_path / "trace_VQE_E_0.txt").read_text().splitlines()[0].split()[1:7]
    assert p == e


def test_noise_sweep(tmp_path):
    code, out = run(
        "noise-sweep", "--hamiltonian", HEIS, "--trials", "2", "--shots", "exact",
        "--max-iter", "30", "--epsilons", "0,5", "--out", str(tmp_path),
    )
    assert code == EXIT_OK
    _, rows = parse_records((tmp_path / "sweep.csv").read_text(), [float, str, int, float])
    assert len(rows) == 8
    _, summ = parse_records((tmp_path / "sweep_summary.csv").read_text(), [float, str, float, float, int])
    assert {(s[0], s[1]) for s in summ} == {(0.0, "VQE_P"), (0.0, "VQE_E"), (5.0, "VQE_P"), (5.0, "VQE_E")}


def test_scan(tmp_path):
    code, _ = run(
        "scan", "--hamiltonian", SCAN, "--trials", "1", "--shots", "exact", "--mode", "entangled",
        "--out", str(tmp_path),
    )
    assert code == EXIT_OK
    _, rows = parse_records((tmp_path / "scan.csv").read_text(), [float, str, int, float, float])
    assert [r[0] for r in rows] == [0.6, 0.75, 0.9, 1.2, 1.6, 2.2]
    assert all(r[3] >= r[4] - 1e-9 for r in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--hamiltonian", HEIS, "--trials", "0"],
        ["run", "--hamiltonian", "/no/such/file"],
        ["run"],
        ["run", "--hamiltonian", HEIS, "--shots", "-5"],
        ["run", "--hamiltonian", HEIS, "--tol", "0"],
        ["noise-sweep", "--hamiltonian", HEIS, "--epsilons", "-1"],
        ["frobnicate"],
    ],
)
def test_config_errors(argv, capsys):
    assert run(*argv)[0] == EXIT_CONFIG


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("XX 1\nQQ 2\n")
    assert run("group", "--hamiltonian", str(bad))[0] == EXIT_PARSE


def test_console_module_entry():
    p = subprocess.run([sys.executable, "-m", "photonic_vqe.cli", "bell-check"], capture_output=True, text=True)
    assert p.returncode == 0
    assert "psi+" in p.stdout
