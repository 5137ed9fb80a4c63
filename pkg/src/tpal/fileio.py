"""Plain-text coefficient files and CSV result files.

Coefficient format::

    TPAL 1
    n k
    # A_0
    re im re im ...      (n rows of 2n numbers per block, k+1 blocks)

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import csv
import math

import numpy as np

from .errors import ParseError
from .polynomial import PalindromicPolynomial

MAGIC = "TPAL 1"
RESULT_HEADER = ["index", "re_lambda", "im_lambda", "re_y", "im_y", "eta_hat", "sweeps", "status"]


def write_coefficients(path, P: PalindromicPolynomial) -> None:
    with open(path, "w") as fh:
        fh.write(f"{MAGIC}\n{P.n} {P.k}\n")
        for j, A in enumerate(P.coeffs):
            fh.write(f"# A_{j}\n")
            for row in A:
                fh.write(" ".join(f"{v.real:.17g} {v.imag:.17g}" for v in row) + "\n")


def read_coefficients(path) -> PalindromicPolynomial:
    path = str(path)
    with open(path) as fh:
        lines = [(i + 1, ln.rstrip("\n")) for i, ln in enumerate(fh)]
    body = [(i, ln) for i, ln in lines if ln.strip() and not ln.lstrip().startswith("#")]

    def fail(line, col, msg):
        raise ParseError(path, line, col, msg)

    if not body:
        fail(1, 1, "empty file")
    lno, ln = body[0]
    if ln.strip() != MAGIC:
        fail(lno, 1, f"expected header {MAGIC!r}")
    if len(body) < 2:
        fail(lno + 1, 1, "missing 'n k' line")
    lno, ln = body[1]
    toks = ln.split()
    if len(toks) != 2:
        fail(lno, 1, "expected two integers 'n k'")
    try:
        n, k = int(toks[0]), int(toks[1])
    except ValueError:
        fail(lno, 1, "expected two integers 'n k'")
    if n < 1 or k < 1:
        fail(lno, 1, "n and k must be positive")

    rows = body[2:]
    need = (k + 1) * n
    if len(rows) != need:
        at = rows[-1][0] + 1 if len(rows) < need and rows else (rows[need][0] if rows else lno + 1)
        fail(at, 1, f"expected {need} coefficient rows, found {len(rows)}")
    data = np.empty((k + 1, n, n), dtype=complex)
    for r, (lno, ln) in enumerate(rows):
        vals = []
        col = 1
        for tok in ln.split():
            col = ln.index(tok, col - 1) + 1
            try:
                v = float(tok)
            except ValueError:
                fail(lno, col, f"not a number: {tok!r}")
            if not math.isfinite(v):
                fail(lno, col, f"non-finite value: {tok!r}")
            vals.append(v)
            col += len(tok)
        if len(vals) != 2 * n:
            fail(lno, 1, f"expected {2 * n} numbers, found {len(vals)}")
        data[r // n, r % n] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return PalindromicPolynomial(data)


def write_results(path, lambdas, y_values, eta_hat, sweeps, status) -> None:
    """One row per eigenvalue; ``y_values`` etc. are already expanded per eigenvalue."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(RESULT_HEADER)
        for i, lam in enumerate(lambdas):
            y = y_values[i]
            w.writerow([i, repr(float(lam.real)), repr(float(lam.imag)), repr(float(y.real)),
                        repr(float(y.imag)), repr(float(eta_hat[i])), int(sweeps[i]), status[i]])


def write_spectrum(path, result) -> None:
    """Write a :class:`tpal.aberth.SpectrumResult`."""
    ys, eh, sw = [], [], []
    for rec in result.y_roots:
        ys += [rec.value] * 2
        eh += [rec.eta_hat] * 2
        sw += [rec.sweeps_used] * 2
    write_results(path, result.lambdas, ys, eh, sw, result.lambda_status)


def read_results(path) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RESULT_HEADER:
            raise ParseError(str(path), 1, 1, f"expected header {','.join(RESULT_HEADER)}")
        out = []
        for row in reader:
            out.append({
                "index": int(row["index"]),
                "lambda": complex(float(row["re_lambda"]), float(row["im_lambda"])),
                "y": complex(float(row["re_y"]), float(row["im_y"])),
                "eta_hat": float(row["eta_hat"]),
                "sweeps": int(row["sweeps"]),
                "status": row["status"],
            })
        return out


def write_history(path, history) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sweep", "root", "re", "im"])
        for s, snap in enumerate(history):
            for i, z in enumerate(snap):
                w.writerow([s, i, repr(float(z.real)), repr(float(z.imag))])
