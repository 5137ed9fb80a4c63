import csv
import subprocess
import sys

import numpy as np
import pytest

from tpal import gen_h, gen_random
from tpal.cli import main
from tpal.errors import ParseError
from tpal.fileio import RESULT_HEADER, read_coefficients, read_results, write_coefficients


def run(*args):
    return main([str(a) for a in args])


def test_coefficient_roundtrip(tmp_path):
    P = gen_random(3, 2, 17)
    write_coefficients(tmp_path / "p.txt", P)
    Q = read_coefficients(tmp_path / "p.txt")
    assert Q.coeffs.tobytes() == P.coeffs.tobytes()


def test_gen_h_file_layout(tmp_path):
    f = tmp_path / "h.txt"
    assert run("gen", "h", "--n", 2, "--k", 1, "-o", f) == 0
    lines = [ln for ln in f.read_text().splitlines() if not ln.startswith("#")]
    assert lines == ["TPAL 1", "2 1", "0 0 0 0", "0 0 0 0", "1 0 0 0", "1 0 1 0"]


def test_gen_random_bytes_deterministic(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    run("gen", "random", "--n", 2, "--k", 3, "--seed", 5, "-o", a)
    run("gen", "random", "--n", 2, "--k", 3, "--seed", 5, "-o", b)
    run("gen", "random", "--n", 2, "--k", 3, "--seed", 6, "-o", c)
    assert a.read_bytes() == b.read_bytes() != c.read_bytes()
    assert read_coefficients(a).coeffs.tobytes() == gen_random(2, 3, 5).coeffs.tobytes()


def test_gen_rejects_bad_input(tmp_path):
    assert run("gen", "cubic", "--n", 1, "--k", 1, "-o", tmp_path / "x") == 1
    assert run("gen", "h", "--n", 0, "--k", 1, "-o", tmp_path / "x") == 1


def test_parse_comments_and_blank_lines(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("# hand written\nTPAL 1\n\n1 1\n# A_0\n3 0\n\n# A_1\n1 0.5\n")
    P = read_coefficients(f)
    assert P.coeffs[0, 0, 0] == 3 and P.coeffs[1, 0, 0] == 1 + 0.5j


@pytest.mark.parametrize("text, line, col", [
    ("TPAL 2\n1 1\n0 0\n1 0\n", 1, 1),
    ("TPAL 1\n1\n0 0\n1 0\n", 2, 1),
    ("TPAL 1\n1 1\n0 0\n1 x\n", 4, 3),
    ("TPAL 1\n1 1\n0 0\n1 0 0\n", 4, 1),
    ("TPAL 1\n1 1\n0 0\n", 4, 1),
    ("TPAL 1\n1 1\n0 0\n1  nan\n", 4, 4),
])
def test_parse_errors_locate(tmp_path, text, line, col):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    with pytest.raises(ParseError) as info:
        read_coefficients(f)
    assert (info.value.line, info.value.col) == (line, col)
    assert f"{line}:{col}" in str(info.value)


def test_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("TPAL 1\n1 1\n0 0\n1 x\n")
    assert run("solve", f, "--out", tmp_path / "r.csv") == 1
    assert "bad.txt:4:3" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert run("solve", tmp_path / "nope.txt", "--out", tmp_path / "r.csv") == 1
    assert run("oracle", tmp_path / "nope.txt", "-o", tmp_path / "r.csv") == 1


def test_solve_h12(tmp_path):
    f, r = tmp_path / "h.txt", tmp_path / "r.csv"
    run("gen", "h", "--n", 1, "--k", 2, "-o", f)
    assert run("solve", f, "--out", r) == 0
    rows = read_results(r)
    assert len(rows) == 4 and {x["status"] for x in rows} == {"converged"}
    with open(r) as fh:
        assert next(csv.reader(fh)) == RESULT_HEADER
    for a, b in zip(rows[0::2], rows[1::2]):
        assert a["y"] == b["y"] and abs(a["lambda"] * b["lambda"] - 1) <= 1e-10
    assert run("check", f, r) == 0


def test_solve_output_deterministic(tmp_path):
    f = tmp_path / "p.txt"
    run("gen", "random", "--n", 2, "--k", 3, "--seed", 1, "-o", f)
    run("solve", f, "--out", tmp_path / "a.csv", "--history", tmp_path / "ha.csv")
    run("solve", f, "--out", tmp_path / "b.csv", "--history", tmp_path / "hb.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "ha.csv").read_bytes() == (tmp_path / "hb.csv").read_bytes()


def test_history_file(tmp_path):
    f, h = tmp_path / "p.txt", tmp_path / "h.csv"
    run("gen", "random", "--n", 2, "--k", 2, "--seed", 0, "-o", f)
    run("solve", f, "--out", tmp_path / "r.csv", "--history", h)
    rows = list(csv.reader(open(h)))
    assert rows[0] == ["sweep", "root", "re", "im"]
    assert {r[0] for r in rows[1:]} >= {"0", "1"}
    assert len(rows[1:]) % 4 == 0


def test_tolerance_flag_reduces_sweeps(tmp_path, capsys):
    f = tmp_path / "p.txt"
    run("gen", "random", "--n", 2, "--k", 5, "--seed", 2, "-o", f)

    def sweeps(*extra):
        capsys.readouterr()
        run("solve", f, "--out", tmp_path / "r.csv", *extra)
        return int(capsys.readouterr().out.split(",")[1].split()[0])

    assert sweeps("--tol", "1e-2") < sweeps()


def test_maxit_exit_code(tmp_path):
    f = tmp_path / "p.txt"
    run("gen", "random", "--n", 2, "--k", 4, "--seed", 0, "-o", f)
    assert run("solve", f, "--out", tmp_path / "r.csv", "--maxit", 1) == 2


def test_start_flags(tmp_path):
    f = tmp_path / "p.txt"
    run("gen", "random", "--n", 2, "--k", 3, "--seed", 0, "-o", f)
    assert run("solve", f, "--out", tmp_path / "r.csv", "--ellipses", 2, "--axis", 6, "--seed", 4) == 0
    assert run("solve", f, "--out", tmp_path / "r.csv", "--ellipses", 7, "--axis", 6) == 1
    assert run("solve", f, "--out", tmp_path / "r.csv", "--jacobi", "--maxit", 100) == 0


def test_check_detects_corruption(tmp_path):
    f, r = tmp_path / "p.txt", tmp_path / "r.csv"
    run("gen", "random", "--n", 2, "--k", 2, "--seed", 3, "-o", f)
    run("solve", f, "--out", r)
    assert run("check", f, r) == 0
    lines = r.read_text().splitlines()
    cells = lines[1].split(",")
    cells[1] = repr(float(cells[1]) + 0.3)
    lines[1] = ",".join(cells)
    r.write_text("\n".join(lines) + "\n")
    assert run("check", f, r) == 3


def test_check_skips_synthetic(tmp_path):
    f, r = tmp_path / "p.txt", tmp_path / "r.csv"
    run("gen", "h", "--n", 1, "--k", 1, "-o", f)
    run("solve", f, "--out", r)
    lines = r.read_text().splitlines()
    # put a non-eigenvalue into a row flagged synthetic
    cells = lines[1].split(",")
    cells[1], cells[2], cells[-1] = "5.0", "0.0", "synthetic"
    lines[1] = ",".join(cells)
    r.write_text("\n".join(lines) + "\n")
    assert run("check", f, r) == 0


def test_check_mismatched_files(tmp_path):
    f, g, r = tmp_path / "p.txt", tmp_path / "q.txt", tmp_path / "r.csv"
    run("gen", "random", "--n", 2, "--k", 2, "-o", f)
    run("gen", "random", "--n", 2, "--k", 3, "-o", g)
    run("solve", f, "--out", r)
    assert run("check", g, r) == 1


@pytest.mark.parametrize("n,k", [(n, k) for n in (1, 2, 3) for k in (1, 2, 5, 8)])
def test_pipeline_h_family(tmp_path, n, k):
    f, r = tmp_path / "h.txt", tmp_path / "r.csv"
    run("gen", "h", "--n", n, "--k", k, "-o", f)
    assert run("solve", f, "--out", r) in (0, 2)
    assert run("check", f, r) == 0


def test_oracle_command(tmp_path):
    f, o = tmp_path / "p.txt", tmp_path / "o.csv"
    run("gen", "random", "--n", 2, "--k", 2, "--seed", 1, "-o", f)
    assert run("oracle", f, "-o", o) == 0
    rows = read_results(o)
    assert len(rows) == 8
    assert all(x["status"] == "oracle" and np.isnan(x["eta_hat"]) for x in rows)


def test_oracle_pairing_failure(tmp_path, monkeypatch):
    from tpal import cli
    from tpal.errors import PairingFailure

    def boom(P):
        raise PairingFailure(1.0, 1e-4)

    monkeypatch.setattr(cli, "reference_spectrum", boom)
    f = tmp_path / "p.txt"
    write_coefficients(f, gen_h(1, 2))
    assert run("oracle", f, "-o", tmp_path / "o.csv") == 4


def test_module_entry_point(tmp_path):
    f = tmp_path / "h.txt"
    out = subprocess.run([sys.executable, "-m", "tpal", "gen", "h", "--n", "1", "--k", "3", "-o", str(f)])
    assert out.returncode == 0 and f.exists()
