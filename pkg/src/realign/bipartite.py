"""Validated bipartite density matrices and the transforms on them.

A bipartite state lives on an m-dimensional system A tensored with an
n-dimensional system B, basis ordered A-major: the (mn) x (mn) matrix
is an m x m grid of n x n blocks, block (i, j) tied to |i><j| on A.
Every transform in this module is derived from that single convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    HermiticityError,
    PositivityError,
    ShapeError,
    TraceError,
    ValidationError,
)

#: Structural tolerances for density-matrix validation.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
#: Trace deviations up to this much may be auto-normalized on request.
TRACE_NORMALIZE_LIMIT = 1e-6


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix on C^m (x) C^n, produced by :func:`validate`."""

    dim_a: int
    dim_b: int
    matrix: np.ndarray
    trace_normalized: bool = False

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)


@dataclass(frozen=True)
class KronDecomposition:
    """Expansion rho = sum_i X_i (x) Y_i from the realigned-matrix SVD.

    Factor pairs are ordered by decreasing singular value and share the
    weight symmetrically: ||X_i||_F == ||Y_i||_F == sqrt(sigma_i).
    """

    factors: tuple[tuple[np.ndarray, np.ndarray], ...] = field(default_factory=tuple)

    def reconstruct(self) -> np.ndarray:
        x0, y0 = self.factors[0]
        out = np.zeros(
            (x0.shape[0] * y0.shape[0], x0.shape[1] * y0.shape[1]),
            dtype=np.complex128,
        )
        for x, y in self.factors:
            out += linalg.kron(x, y)
        return out


def _trusted(matrix: np.ndarray, m: int, n: int, normalized: bool = False) -> BipartiteState:
    # Internal constructor for matrices that are density matrices by
    # construction (convex mixtures, permutation conjugates, ...).
    return BipartiteState(m, n, matrix, trace_normalized=normalized)


def validate(matrix, m: int, n: int, *, normalize_trace: bool = False) -> BipartiteState:
    """Check the three density-matrix invariants and wrap the result.

    Raises a distinct error per violated invariant, naming the measured
    magnitude: :class:`ShapeError`, :class:`HermiticityError`,
    :class:`TraceError` or :class:`PositivityError`.  With
    ``normalize_trace`` a trace within 1e-6 of 1 is rescaled to exactly
    1 and the state is flagged; larger deviations still raise.
    """
    if m < 1 or n < 1:
        raise ShapeError(f"subsystem dimensions must be positive, got ({m}, {n})")
    arr = linalg._as_complex(matrix, "density matrix")
    if arr.shape != (m * n, m * n):
        raise ShapeError(
            f"expected a {m * n}x{m * n} matrix for dims ({m}, {n}), got {arr.shape}"
        )
    herm_dev = float(np.abs(arr - arr.conj().T).max())
    if herm_dev > HERMITICITY_TOL:
        raise HermiticityError(
            f"density matrix deviates from Hermitian by {herm_dev:.3e}"
        )
    arr = (arr + arr.conj().T) / 2.0
    trace_dev = float(abs(arr.trace() - 1.0))
    normalized = False
    if trace_dev > TRACE_TOL:
        if normalize_trace and trace_dev <= TRACE_NORMALIZE_LIMIT:
            arr = arr / arr.trace().real
            normalized = True
        else:
            raise TraceError(f"density matrix trace deviates from 1 by {trace_dev:.3e}")
    min_eig = float(linalg.hermitian_eigenvalues(arr)[-1])
    if min_eig < -PSD_TOL:
        raise PositivityError(
            f"density matrix has eigenvalue {min_eig:.3e} below the PSD tolerance"
        )
    return BipartiteState(m, n, arr, trace_normalized=normalized)


# ---------------------------------------------------------------------------
# Structural transforms
# ---------------------------------------------------------------------------

def _realign_array(arr: np.ndarray, m: int, n: int) -> np.ndarray:
    """Realign (mn)x(mn) matrices (or a (k,mn,mn) stack) into m^2 x n^2.

    Viewing the input as an m x m grid of n x n blocks Z_{i,j}, row
    (i-1)*m + j of the output is vec(Z_{j,i})^T: blocks are visited
    down each block-column, every block flattened column-major.
    """
    if arr.ndim == 2:
        t = arr.reshape(m, n, m, n)
        return t.transpose(2, 0, 3, 1).reshape(m * m, n * n)
    t = arr.reshape(arr.shape[0], m, n, m, n)
    return t.transpose(0, 3, 1, 4, 2).reshape(arr.shape[0], m * m, n * n)


def realign(s: BipartiteState) -> np.ndarray:
    """Entry rearrangement of the state into an m^2 x n^2 matrix.

    The output is an entry permutation of the input, so it carries the
    same Frobenius norm; its trace norm is the quantity the realignment
    criterion thresholds.  (For the maximally entangled state in d x d
    the result is the d^2 x d^2 identity scaled by 1/d: all d^2 singular
    values equal 1/d, so the trace norm is d.)
    """
    return _realign_array(s.matrix, s.dim_a, s.dim_b)


def _partial_transpose_array(arr: np.ndarray, m: int, n: int, subsystem: str) -> np.ndarray:
    if subsystem not in ("A", "B"):
        raise ValidationError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    if arr.ndim == 2:
        t = arr.reshape(m, n, m, n)
        axes = (2, 1, 0, 3) if subsystem == "A" else (0, 3, 2, 1)
        return t.transpose(axes).reshape(m * n, m * n)
    t = arr.reshape(arr.shape[0], m, n, m, n)
    axes = (0, 3, 2, 1, 4) if subsystem == "A" else (0, 1, 4, 3, 2)
    return t.transpose(axes).reshape(arr.shape[0], m * n, m * n)


def partial_transpose(s: BipartiteState, subsystem: str = "A") -> np.ndarray:
    """Transpose one tensor factor: block-index pair for A, within-block for B."""
    return _partial_transpose_array(s.matrix, s.dim_a, s.dim_b, subsystem)


def swap_operator(m: int, n: int) -> np.ndarray:
    """Permutation S(m, n) with S(m,n) (v (x) u) = u (x) v for u in C^m, v in C^n.

    Satisfies S(n,m) (X (x) Y) S(m,n) == Y (x) X for m x m X and n x n Y,
    and S(n,m) == S(m,n)^T.
    """
    if m < 1 or n < 1:
        raise ShapeError(f"swap operator needs positive dimensions, got ({m}, {n})")
    s = np.zeros((m * n, m * n), dtype=np.complex128)
    for i in range(m):
        for j in range(n):
            s[i * n + j, j * m + i] = 1.0
    return s


def swap_subsystems(s: BipartiteState) -> BipartiteState:
    """Reorder the state from A (x) B to B (x) A (an involution)."""
    m, n = s.dim_a, s.dim_b
    sw = swap_operator(n, m)
    rho_ba = sw @ s.matrix @ sw.conj().T
    return _trusted(rho_ba, n, m, normalized=s.trace_normalized)


def kron_decompose(s: BipartiteState) -> KronDecomposition:
    """Expand the state as sum_i X_i (x) Y_i via the realigned-matrix SVD.

    Each singular triple (sigma, u, v) of the realigned matrix yields
    X = unvec(sqrt(sigma) u) and Y = unvec(sqrt(sigma) conj(v)); triples
    with sigma <= 1e-10 * sigma_max are dropped as numerically zero.
    """
    m, n = s.dim_a, s.dim_b
    spec = linalg.svd(realign(s), want_vectors=True)
    sig = spec.singular_values
    keep = sig > 1e-10 * (sig[0] if sig.size else 0.0)
    factors = []
    for i in np.flatnonzero(keep):
        root = np.sqrt(sig[i])
        x = linalg.unvec(root * spec.left_vectors[:, i], m, m)
        y = linalg.unvec(root * np.conj(spec.right_vectors[:, i]), n, n)
        factors.append((x, y))
    return KronDecomposition(factors=tuple(factors))


def partial_trace(s: BipartiteState, keep: str = "A") -> np.ndarray:
    """Reduced density matrix of one subsystem."""
    if keep not in ("A", "B"):
        raise ValidationError(f"keep must be 'A' or 'B', got {keep!r}")
    t = s.matrix.reshape(s.dim_a, s.dim_b, s.dim_a, s.dim_b)
    return np.einsum("ikjk->ij", t) if keep == "A" else np.einsum("ikil->kl", t)
