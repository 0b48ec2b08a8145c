import json
import subprocess
import sys

import pytest

from skewring.builtins import DATA_DIR
from skewring.cli import EXIT_INPUT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_quiver_not_separable(capsys):
    code, out, _ = run(capsys, "build", str(DATA_DIR / "quiver_swap_f2.inst"))
    assert code == EXIT_OK
    assert "separable: NO" in out
    assert "index invertible: NO" in out
    assert "module Sx: left over RH, dim 1" in out


def test_build_f3_separable(capsys):
    code, out, _ = run(capsys, "build", "--builtin", "f3_c2")
    assert code == EXIT_OK
    assert "separable: YES (witness verified" in out
    assert "index invertible: YES" in out


def test_build_malformed_located(capsys, tmp_path):
    text = (DATA_DIR / "f2_c2.inst").read_text().replace("ROW 1 0", "ROW 1 x")
    p = tmp_path / "bad.inst"
    p.write_text(text)
    code, _, err = run(capsys, "build", str(p))
    assert code == EXIT_INPUT
    assert f"{p}:9:" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "build", "no/such/file.inst")
    assert code == EXIT_INPUT and "not found" in err
    code, _, err = run(capsys, "verify", "missing.inst")
    assert code == EXIT_INPUT


@pytest.mark.parametrize("argv,expected", [
    (["--builtin", "f2_c2", "ext", "k", "k", "0..6"], "1 1 1 1 1 1 1"),
    (["--builtin", "f3_c2", "pd", "k"], "finite(0)"),
    (["--builtin", "f2_c2", "pd", "k"], "infinite (Omega^0 ~= Omega^1)"),
    (["--builtin", "f2_c2", "tor", "k^*", "k", "0..3"], "1 1 1 1"),
    (["--builtin", "f2_c2", "id", "k"], "infinite (Omega^0 ~= Omega^1)"),
    (["--builtin", "f3_c2", "ext", "k", "k", "2"], "0"),
])
def test_compute_values(capsys, argv, expected):
    code, out, _ = run(capsys, "compute", *argv)
    assert code == EXIT_OK
    assert out.strip().splitlines()[0] == expected


def test_compute_from_file(capsys):
    code, out, _ = run(capsys, "compute", str(DATA_DIR / "f2_c2.inst"), "ext", "k", "k", "0..2")
    assert code == EXIT_OK and out.strip() == "1 1 1"


def test_compute_copure(capsys):
    code, out, _ = run(capsys, "compute", "--builtin", "f2_c2", "cfd", "k")
    assert code == EXIT_OK and out.startswith("finite(0)")


def test_compute_induce_prints_module(capsys):
    code, out, _ = run(capsys, "compute", "--builtin", "quiver_swap_f2", "induce", "Sx")
    assert code == EXIT_OK
    assert out.startswith("MODULE Sx_ind left RG 2")
    code, out, _ = run(capsys, "compute", "--builtin", "f2_c2", "restrict", "k")
    assert out.startswith("MODULE k_res left RH 1")
    code, out, _ = run(capsys, "compute", "--builtin", "f2_c2", "dual", "k")
    assert out.startswith("MODULE k_dual right RG 1")


@pytest.mark.parametrize("argv", [
    ["--builtin", "f2_c2", "ext", "nope", "k", "0..2"],
    ["--builtin", "f2_c2", "ext", "k", "k", "2..x"],
    ["--builtin", "f2_c2", "frobnicate", "k"],
    ["--builtin", "f2_c2", "induce", "k"],
    ["--builtin", "f2_c2", "tor", "k", "k", "0"],
    ["--builtin", "f2_c2", "pd"],
    ["--builtin", "no_such_instance", "pd", "k"],
])
def test_compute_input_errors(capsys, argv):
    code, _, err = run(capsys, "compute", *argv)
    assert code == EXIT_INPUT and err.startswith("error:")


def test_verify_single_builtin(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--builtin", "f2_c2", "--cutoff", "4", "--out", str(out_path))
    assert code == EXIT_OK
    assert "summary:" in out and "0 refuted" in out
    doc = json.loads(out_path.read_text())
    assert doc["config"]["cutoff"] == 4
    assert doc["summary"]["refuted"] == 0


def test_verify_file_and_empty(capsys):
    code, out, _ = run(capsys, "verify", str(DATA_DIR / "f3_c2.inst"), "--cutoff", "4")
    assert code == EXIT_OK and "refuted" in out
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_OK and out.strip() == "summary: 0 reports, 0 verified, 0 skipped, 0 refuted"


def test_verify_unknown_builtin(capsys):
    code, _, err = run(capsys, "verify", "--builtin", "bogus")
    assert code == EXIT_INPUT


def test_bad_flags(capsys):
    code, _, _ = run(capsys, "verify", "--cutoff", "0")
    assert code == EXIT_INPUT


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "skewring", "compute", "--builtin", "f2_c2",
                        "ext", "k", "k", "0..1"], capture_output=True, text=True, timeout=60)
    assert p.returncode == 0 and p.stdout.strip() == "1 1"
