"""Plain-text matrix and vector files.

Header line "rows cols field" with field in {real, complex}, followed by
row-major entries, one matrix row per line.  Complex entries are written
"a+bi" (e.g. 1.5-0.25i); floats use shortest round-trip formatting, so a
parse/print cycle is exact for decimals up to 17 significant digits.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?:inf|nan)?"
_COMPLEX_RE = re.compile(rf"^({_FLOAT})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")


def format_complex(z: complex) -> str:
    re_part = repr(float(z.real))
    im = float(z.imag)
    sign = "+" if im >= 0 or im != im else "-"  # NaN keeps '+'
    return f"{re_part}{sign}{repr(abs(im))}i"


def parse_complex(token: str) -> complex:
    m = _COMPLEX_RE.match(token)
    if not m:
        raise ValueError(f"malformed complex entry {token!r} (expected a+bi)")
    return complex(float(m.group(1)), float(m.group(2)))


def write_matrix(path, A: np.ndarray) -> None:
    A = np.asarray(A)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2:
        raise ValueError("only 1-D or 2-D arrays are supported")
    is_complex = np.iscomplexobj(A)
    field = "complex" if is_complex else "real"
    lines = [f"{A.shape[0]} {A.shape[1]} {field}"]
    for row in A:
        if is_complex:
            lines.append(" ".join(format_complex(z) for z in row))
        else:
            lines.append(" ".join(repr(float(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path) -> np.ndarray:
    text = Path(path).read_text().strip().splitlines()
    if not text:
        raise ValueError(f"{path}: empty matrix file")
    header = text[0].split()
    if len(header) != 3 or header[2] not in ("real", "complex"):
        raise ValueError(f"{path}: malformed header {text[0]!r} (want 'rows cols real|complex')")
    rows, cols = int(header[0]), int(header[1])
    tokens = " ".join(text[1:]).split()
    if len(tokens) != rows * cols:
        raise ValueError(f"{path}: expected {rows * cols} entries, found {len(tokens)}")
    if header[2] == "complex":
        data = np.array([parse_complex(t) for t in tokens], dtype=complex)
    else:
        data = np.array([float(t) for t in tokens], dtype=float)
    return data.reshape(rows, cols)


def read_vector(path) -> np.ndarray:
    """A matrix file with a single row or column, flattened."""
    A = read_matrix(path)
    if 1 not in A.shape:
        raise ValueError(f"{path}: expected a vector (one row or one column), got {A.shape}")
    return A.ravel()
