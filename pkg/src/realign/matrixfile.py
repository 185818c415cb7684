"""JSON density-matrix files.

Schema: ``{"m": int, "n": int, "re": [[...]], "im": [[...]]}`` where
``re`` and ``im`` are (mn) x (mn) nested arrays of the real and
imaginary parts.  Splitting the parts keeps the file free of complex-
literal ambiguity and diffable; floats are written with full
round-trip precision (>= 15 significant digits).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class MatrixFile:
    """Parsed matrix file: subsystem dims plus the complex matrix."""

    m: int
    n: int
    matrix: np.ndarray


def save_matrix(path, matrix, m: int, n: int) -> None:
    """Write a complex matrix with its subsystem dimensions to JSON."""
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.shape != (m * n, m * n):
        raise ValidationError(
            f"matrix shape {arr.shape} does not match dims ({m}, {n})"
        )
    payload = {
        "m": int(m),
        "n": int(n),
        "re": arr.real.tolist(),
        "im": arr.imag.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_matrix(path) -> MatrixFile:
    """Read a matrix file, with line-level diagnostics on bad JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(
                f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})"
            ) from None
    if not isinstance(payload, dict):
        raise ValidationError(f"{path}: expected a JSON object at top level")
    for key in ("m", "n", "re", "im"):
        if key not in payload:
            raise ValidationError(f"{path}: missing required key {key!r}")
    try:
        m, n = int(payload["m"]), int(payload["n"])
    except (TypeError, ValueError):
        raise ValidationError(f"{path}: 'm' and 'n' must be integers") from None
    if m < 1 or n < 1:
        raise ValidationError(f"{path}: dimensions must be positive, got ({m}, {n})")
    try:
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(f"{path}: 're'/'im' must be numeric arrays") from None
    expected = (m * n, m * n)
    if re.shape != expected or im.shape != expected:
        raise ValidationError(
            f"{path}: expected {expected[0]}x{expected[1]} arrays for dims "
            f"({m}, {n}), got re {re.shape} and im {im.shape}"
        )
    return MatrixFile(m=m, n=n, matrix=re + 1j * im)
