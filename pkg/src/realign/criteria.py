"""Entanglement tests and measures on bipartite states.

Three separate detectors share the :class:`CriterionReport` shape:

* realignment -- flags the state when the trace norm of the realigned
  matrix exceeds 1 (sound for all dimensions, not complete);
* ppt -- flags the state when partial transposition produces a
  negative eigenvalue;
* pure-product -- for pure states only, decides product vs entangled
  from the singular spectrum of the realigned matrix (a single
  singular value equal to 1 means product).

``log_n`` is reported in base 2 by default; the base is a single
configuration point (`DEFAULT_LOG_BASE`) that callers such as the CLI
may override per call with ``log_base='e'``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bipartite, linalg
from .bipartite import BipartiteState
from .errors import ValidationError

#: Base used for log N everywhere unless a caller overrides it.
DEFAULT_LOG_BASE = "2"
#: Detection threshold: entangled iff N > 1 + DETECTION_TOL (and the
#: PPT analogue).  Realignment arithmetic plus Jacobi SVD error is far
#: below this at the matrix sizes involved.
DETECTION_TOL = 1e-9
#: Purity requirement for the pure-product test.
PURITY_TOL = 1e-9

_SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=np.complex128,
)


@dataclass(frozen=True)
class CriterionReport:
    """Verdict of one detector plus the scalar it thresholded."""

    criterion: str  # 'realignment' | 'ppt' | 'pure-product'
    detected_entangled: bool
    scalar: float
    log_n: float | None = None


@dataclass(frozen=True)
class MeasureReport:
    """Entanglement estimates for one state: log N, N-1, f, optional E_f."""

    log_n: float
    n_minus_one: float
    f: float
    e_f: float | None = None


def _log(values, log_base) -> np.ndarray:
    base = DEFAULT_LOG_BASE if log_base is None else str(log_base)
    if base == "2":
        return np.log2(values)
    if base == "e":
        return np.log(values)
    raise ValidationError(f"log base must be '2' or 'e', got {log_base!r}")


# ---------------------------------------------------------------------------
# Batch kernels (stacks of matrices); the public API wraps the k=1 case.
# ---------------------------------------------------------------------------

def realignment_norms(rhos: np.ndarray, m: int, n: int) -> np.ndarray:
    """Trace norms of the realigned matrices for a (k, mn, mn) stack."""
    return np.atleast_1d(linalg.trace_norm(bipartite._realign_array(rhos, m, n)))


def min_pt_eigenvalues(
    rhos: np.ndarray, m: int, n: int, subsystem: str = "A"
) -> np.ndarray:
    """Minimum partial-transpose eigenvalue for a (k, mn, mn) stack."""
    pt = bipartite._partial_transpose_array(rhos, m, n, subsystem)
    w = linalg.hermitian_eigenvalues(pt)
    return w[..., -1]


def _sqrtm_psd_stack(rhos: np.ndarray) -> np.ndarray:
    # Matrix square root of a stack of PSD Hermitian matrices.
    w, v = linalg.hermitian_eigen(rhos)
    root = np.sqrt(np.maximum(w, 0.0))
    return (v * root[:, None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def concurrences(rhos: np.ndarray) -> np.ndarray:
    """Concurrence for a (k, 4, 4) stack of two-qubit density matrices.

    Computed as max(0, s1 - s2 - s3 - s4) from the singular values of
    sqrt(rho) @ sqrt(rho_flip), where rho_flip is the spin-flipped state
    (sigma_y x sigma_y) rho* (sigma_y x sigma_y).  Those singular values
    equal the usual square-rooted eigenvalues of rho @ rho_flip, but
    stay accurate near zero where the eigenvalue route loses half the
    digits to the square root.
    """
    flip = _SIGMA_YY @ np.conj(rhos) @ _SIGMA_YY
    w = _sqrtm_psd_stack(rhos) @ _sqrtm_psd_stack(flip)
    lam = linalg.svd(w).singular_values  # descending
    c = lam[:, 0] - lam[:, 1:].sum(axis=1)
    return np.maximum(c, 0.0)


def formation_entropies(c: np.ndarray) -> np.ndarray:
    """Entanglement of formation from concurrence: h((1+sqrt(1-C^2))/2)."""
    c = np.minimum(np.asarray(c, dtype=float), 1.0)
    x = (1.0 + np.sqrt(1.0 - c * c)) / 2.0
    out = np.zeros_like(x)
    inner = (x > 0.0) & (x < 1.0)
    xi = x[inner]
    out[inner] = -xi * np.log2(xi) - (1.0 - xi) * np.log2(1.0 - xi)
    return out


# ---------------------------------------------------------------------------
# Public per-state API
# ---------------------------------------------------------------------------

def realignment_test(
    s: BipartiteState, *, tol: float = DETECTION_TOL, log_base=None
) -> CriterionReport:
    """Detect entanglement from the trace norm N of the realigned state.

    A separable state always has N <= 1, so N > 1 + tol is a proof of
    entanglement; N <= 1 is inconclusive.
    """
    n_val = float(realignment_norms(s.matrix[None], s.dim_a, s.dim_b)[0])
    return CriterionReport(
        criterion="realignment",
        detected_entangled=n_val > 1.0 + tol,
        scalar=n_val,
        log_n=float(_log(n_val, log_base)),
    )


def dual_realignment_test(
    s: BipartiteState, *, tol: float = DETECTION_TOL, log_base=None
) -> CriterionReport:
    """Realignment test on the B (x) A reordering; same norm, same verdict."""
    return realignment_test(bipartite.swap_subsystems(s), tol=tol, log_base=log_base)


def ppt_test(
    s: BipartiteState, subsystem: str = "A", *, tol: float = DETECTION_TOL
) -> CriterionReport:
    """Detect entanglement from a negative partial-transpose eigenvalue."""
    w_min = float(min_pt_eigenvalues(s.matrix[None], s.dim_a, s.dim_b, subsystem)[0])
    return CriterionReport(
        criterion="ppt",
        detected_entangled=w_min < -tol,
        scalar=w_min,
    )


def pure_product_test(s: BipartiteState, *, tol: float = DETECTION_TOL) -> CriterionReport:
    """Decide product vs entangled for a pure state.

    A pure state is a product state exactly when its realigned matrix
    has a single singular value equal to 1.  The reported scalar is the
    distance from that signature, max(|s1 - 1|, s2).
    """
    purity = float((s.matrix.real**2 + s.matrix.imag**2).sum())
    if purity < 1.0 - PURITY_TOL:
        raise ValidationError(
            f"pure_product_test needs a pure state (tr rho^2 = {purity:.6f}); "
            "use realignment_test for mixed states"
        )
    sig = linalg.svd(bipartite.realign(s)).singular_values
    second = float(sig[1]) if sig.size > 1 else 0.0
    gap = max(abs(float(sig[0]) - 1.0), second)
    return CriterionReport(
        criterion="pure-product",
        detected_entangled=gap > tol,
        scalar=gap,
    )


def concurrence(s: BipartiteState) -> float:
    """Wootters concurrence of a two-qubit state."""
    if s.dims != (2, 2):
        raise ValidationError(f"concurrence is defined for dims (2, 2), got {s.dims}")
    return float(concurrences(s.matrix[None])[0])


def entanglement_of_formation_2x2(s: BipartiteState) -> float:
    """Entanglement of formation (ebits) of a two-qubit state."""
    if s.dims != (2, 2):
        raise ValidationError(
            f"entanglement of formation is implemented for dims (2, 2), got {s.dims}"
        )
    return float(formation_entropies(concurrences(s.matrix[None]))[0])


def measures(s: BipartiteState, *, log_base=None) -> MeasureReport:
    """log N, N-1 and f = max(0, log N); E_f included for two qubits."""
    n_val = float(realignment_norms(s.matrix[None], s.dim_a, s.dim_b)[0])
    log_n = float(_log(n_val, log_base))
    e_f = entanglement_of_formation_2x2(s) if s.dims == (2, 2) else None
    return MeasureReport(
        log_n=log_n,
        n_minus_one=n_val - 1.0,
        f=max(0.0, log_n),
        e_f=e_f,
    )
