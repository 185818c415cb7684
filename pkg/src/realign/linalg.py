"""Dense complex matrix algebra with deterministic Jacobi spectra.

Eigenvalues and singular values are computed by a cyclic two-sided
Jacobi iteration written here rather than delegated to LAPACK: at the
sizes this package cares about (<= ~200x200) Jacobi is plenty fast,
its accuracy is excellent, and a fixed sweep order makes every
spectrum bit-reproducible across platforms, which the criteria layer
leans on when it compares scalars against detection thresholds.

Matrices are ``numpy`` arrays of dtype complex128.  ``hermitian_eigen``,
``hermitian_eigenvalues``, ``svd`` and ``trace_norm`` also accept a
stack of matrices with shape ``(k, n, n)`` (or ``(k, m, n)``) and then
return stacked results; the sweep driver relies on this to process
whole parameter grids in a few vectorized passes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    HermiticityError,
    NumericalError,
    ShapeError,
    ValidationError,
)

#: Convergence: off-diagonal Frobenius mass <= _OFFDIAG_TOL * ||a||_F.
_OFFDIAG_TOL = 1e-13
#: Hard sweep budget; exceeding it raises ConvergenceError, never silent.
_MAX_SWEEPS = 60
#: Gram eigenvalues in [-_GRAM_CLAMP * scale, 0) are round-off: clamp to 0.
#: Anything more negative (relative to the Gram scale) is a real defect.
_GRAM_CLAMP = 1e-12
#: Hermiticity tolerance for eigensolver inputs.
_HERMITICITY_TOL = 1e-10

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class SpectrumResult:
    """Singular spectrum of a matrix (or stack of matrices).

    ``singular_values`` is sorted descending.  When vectors are
    requested, ``left_vectors`` / ``right_vectors`` hold orthonormal
    columns with ``a == left @ diag(s) @ right.conj().T`` (thin
    factorization, one column per singular value).
    """

    singular_values: np.ndarray
    left_vectors: np.ndarray | None = None
    right_vectors: np.ndarray | None = None


def _as_complex(a, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype != np.complex128:
        arr = arr.astype(np.complex128)
    if not np.isfinite(arr).all():
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def matmul(a, b) -> np.ndarray:
    """Matrix product ``a @ b`` with an explicit shape check."""
    a = _as_complex(a, "left operand")
    b = _as_complex(b, "right operand")
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"expected 2-D operands, got {a.shape} and {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(x, y) -> np.ndarray:
    """Kronecker product: block (i, j) of the result is ``x[i, j] * y``."""
    return np.kron(_as_complex(x), _as_complex(y))


def vec(a) -> np.ndarray:
    """Column-major stacking of a matrix into a vector.

    ``vec([[a11, a12], [a21, a22]]) == [a11, a21, a12, a22]`` -- columns
    first.  A 1-D input is returned unchanged (a column is its own vec).
    """
    a = _as_complex(a)
    if a.ndim == 1:
        return a.copy()
    if a.ndim != 2:
        raise ShapeError(f"vec expects a matrix, got shape {a.shape}")
    return a.ravel(order="F")


def unvec(v, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vec`: reshape a vector column-major into ``rows x cols``."""
    v = _as_complex(v)
    if v.ndim != 1 or v.size != rows * cols:
        raise ShapeError(f"cannot unvec shape {v.shape} into {rows}x{cols}")
    return v.reshape((rows, cols), order="F")


def elementary(k: int, l: int, i: int, j: int) -> np.ndarray:
    """The k x l matrix with a single 1 at row i, column j (1-based)."""
    if not (1 <= i <= k and 1 <= j <= l):
        raise IndexError(f"entry ({i}, {j}) outside a {k}x{l} matrix")
    e = np.zeros((k, l), dtype=np.complex128)
    e[i - 1, j - 1] = 1.0
    return e


# ---------------------------------------------------------------------------
# Jacobi engine
# ---------------------------------------------------------------------------

def _offdiag_sq(a: np.ndarray) -> np.ndarray:
    # (k, n, n) -> (k,) sum of |offdiag|^2.  Summing the off-diagonal
    # entries directly (rather than total - diagonal) avoids the
    # cancellation that would otherwise floor the measurable
    # off-diagonal mass at ~sqrt(eps) * ||a||.
    n = a.shape[-1]
    d = a.real**2 + a.imag**2
    idx = np.arange(n)
    d[:, idx, idx] = 0.0
    return d.sum(axis=(1, 2))


def _jacobi_hermitian(h: np.ndarray, want_vectors: bool = True):
    """Cyclic two-sided Jacobi on a stack of Hermitian matrices.

    ``h`` has shape (k, n, n) and is assumed Hermitian (callers
    symmetrize).  Returns eigenvalues sorted descending, shape (k, n),
    plus the accumulated unitary (k, n, n) when requested.

    One sweep visits the pivots (p, q), p < q, in a fixed row-major
    order; per pivot all still-active matrices in the stack are rotated
    at once.  Matrices whose off-diagonal mass has dropped below
    tolerance are frozen out of subsequent sweeps, so mixed-difficulty
    stacks don't pay for their slowest member.
    """
    a = np.array(h, dtype=np.complex128)
    k, n, _ = a.shape
    v = None
    if want_vectors:
        v = np.zeros_like(a)
        v[:, np.arange(n), np.arange(n)] = 1.0
    if n <= 1 or k == 0:
        w = np.einsum("kii->ki", a).real.copy()
        return (w, v) if want_vectors else (w, None)

    fro = np.sqrt((a.real**2 + a.imag**2).sum(axis=(1, 2)))
    tol_sq = (_OFFDIAG_TOL * fro) ** 2
    active = np.flatnonzero(_offdiag_sq(a) > tol_sq)
    sweeps = 0
    while active.size:
        if sweeps >= _MAX_SWEEPS:
            raise ConvergenceError(
                f"Jacobi iteration did not converge for {active.size} of {k} "
                f"matrices within {_MAX_SWEEPS} sweeps"
            )
        blk = a[active]
        vblk = v[active] if want_vectors else None
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = blk[:, p, q]
                r = np.abs(apq)
                rot = r > 0.0
                if not rot.any():
                    continue
                rs = np.where(rot, r, 1.0)
                phase = np.where(rot, apq / rs, 1.0)  # e^{i arg(apq)}
                app = blk[:, p, p].real
                aqq = blk[:, q, q].real
                # Classic choice of tangent: the root of
                # t^2 + 2*tau*t - 1 = 0 smaller in magnitude, where
                # tau = (aqq - app) / (2 |apq|).  For huge tau the
                # untaken where-branch overflows harmlessly.
                with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                    tau = (aqq - app) / (2.0 * rs)
                    t = np.where(
                        tau >= 0.0,
                        1.0 / (tau + np.sqrt(1.0 + tau * tau)),
                        -1.0 / (-tau + np.sqrt(1.0 + tau * tau)),
                    )
                t = np.where(rot, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # Unitary J = identity outside rows/cols p, q with
                #   J[p,p] = c        J[p,q] = s
                #   J[q,p] = -s e^{-i th}   J[q,q] = c e^{-i th}
                # chosen so that (J^H a J)[p,q] = 0.  Columns first
                # (a <- a J), then rows (a <- J^H a).
                s_row = s * phase
                s_col = s * np.conj(phase)
                c_ph = c * np.conj(phase)
                cp = blk[:, :, p].copy()
                cq = blk[:, :, q].copy()
                blk[:, :, p] = c[:, None] * cp - s_col[:, None] * cq
                blk[:, :, q] = s[:, None] * cp + c_ph[:, None] * cq
                rp = blk[:, p, :].copy()
                rq = blk[:, q, :].copy()
                blk[:, p, :] = c[:, None] * rp - s_row[:, None] * rq
                blk[:, q, :] = s[:, None] * rp + (c * phase)[:, None] * rq
                if want_vectors:
                    vp = vblk[:, :, p].copy()
                    vq = vblk[:, :, q].copy()
                    vblk[:, :, p] = c[:, None] * vp - s_col[:, None] * vq
                    vblk[:, :, q] = s[:, None] * vp + c_ph[:, None] * vq
        a[active] = blk
        if want_vectors:
            v[active] = vblk
        sweeps += 1
        still = _offdiag_sq(a[active]) > tol_sq[active]
        active = active[still]

    w = np.einsum("kii->ki", a).real.copy()
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if want_vectors:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def _check_hermitian(a: np.ndarray) -> np.ndarray:
    if a.ndim not in (2, 3):
        raise ShapeError(f"expected a matrix or stack of matrices, got {a.shape}")
    if a.shape[-1] != a.shape[-2]:
        raise ShapeError(f"matrix is not square: {a.shape}")
    dev = np.abs(a - np.conj(np.swapaxes(a, -1, -2))).max() if a.size else 0.0
    if dev > _HERMITICITY_TOL:
        raise HermiticityError(
            f"matrix deviates from Hermitian by {dev:.3e} "
            f"(tolerance {_HERMITICITY_TOL:.0e})"
        )
    # Symmetrize so the iteration works on an exactly Hermitian matrix.
    return (a + np.conj(np.swapaxes(a, -1, -2))) / 2.0


def hermitian_eigen(a):
    """Eigen-decomposition of a Hermitian matrix (or stack).

    Returns ``(w, v)`` with eigenvalues ``w`` sorted descending and
    eigenvectors in the columns of ``v`` (``a @ v[:, i] == w[i] * v[:, i]``).
    Raises :class:`HermiticityError` if the input is not Hermitian
    within 1e-10.
    """
    arr = _as_complex(a)
    single = arr.ndim == 2
    h = _check_hermitian(arr)
    if single:
        h = h[None]
    w, v = _jacobi_hermitian(h, want_vectors=True)
    return (w[0], v[0]) if single else (w, v)


def hermitian_eigenvalues(a) -> np.ndarray:
    """Like :func:`hermitian_eigen` but values only (cheaper on stacks)."""
    arr = _as_complex(a)
    single = arr.ndim == 2
    h = _check_hermitian(arr)
    if single:
        h = h[None]
    w, _ = _jacobi_hermitian(h, want_vectors=False)
    return w[0] if single else w


def _fill_orthonormal(u: np.ndarray, cols) -> None:
    """Overwrite columns ``cols`` of u with vectors orthonormal to the rest.

    Candidates are standard basis vectors, orthogonalized twice against
    all current columns (modified Gram-Schmidt); deterministic.
    """
    m = u.shape[0]
    good = [j for j in range(u.shape[1]) if j not in set(cols)]
    basis = [u[:, j] for j in good]
    for j in cols:
        chosen = None
        for cand in range(m):
            x = np.zeros(m, dtype=np.complex128)
            x[cand] = 1.0
            for _ in range(2):
                for b in basis:
                    x = x - (np.conj(b) @ x) * b
            nrm = np.sqrt((x.real**2 + x.imag**2).sum())
            if nrm > 0.5:
                chosen = x / nrm
                break
        if chosen is None:  # pragma: no cover - basis cannot be full here
            raise NumericalError("failed to complete an orthonormal basis")
        u[:, j] = chosen
        basis.append(chosen)


def svd(a, want_vectors: bool = False) -> SpectrumResult:
    """Singular value decomposition via the smaller Gram matrix.

    The Gram matrix ``a^H a`` (or ``a a^H``, whichever is smaller) is
    diagonalized by the Jacobi engine; each singular value is then
    refined as ``||a v_i||``, which restores full absolute accuracy for
    the small singular values that the square-root of a Gram eigenvalue
    would blur to ~sqrt(eps).  With ``want_vectors`` the missing side is
    recovered from ``a v_i / s_i`` (or the adjoint analogue), with
    deterministic basis completion where s_i is numerically zero.
    """
    arr = _as_complex(a)
    single = arr.ndim == 2
    if single:
        arr = arr[None]
    if arr.ndim != 3:
        raise ShapeError(f"expected a matrix or stack of matrices, got {np.shape(a)}")
    k, m, n = arr.shape
    q = min(m, n)
    if q == 0:
        sig = np.zeros((k, 0))
        result = SpectrumResult(
            singular_values=sig[0] if single else sig,
            left_vectors=np.zeros((m, 0)) if single and want_vectors else None,
            right_vectors=np.zeros((n, 0)) if single and want_vectors else None,
        )
        return result

    tall = m >= n
    if tall:
        gram = np.einsum("kij,kil->kjl", arr.conj(), arr)  # a^H a, (k, n, n)
    else:
        gram = np.einsum("kil,kjl->kij", arr, arr.conj())  # a a^H, (k, m, m)
    gram = (gram + np.conj(np.swapaxes(gram, -1, -2))) / 2.0
    w, basis = _jacobi_hermitian(gram, want_vectors=True)

    # Round-off may push zero eigenvalues slightly negative; clamp
    # within budget, refuse anything a PSD Gram matrix cannot produce.
    scale = np.maximum(1.0, w[:, 0]) if q else np.ones(k)
    floor = -_GRAM_CLAMP * scale
    if (w < floor[:, None]).any():
        worst = float((w / scale[:, None]).min())
        raise NumericalError(
            f"Gram matrix eigenvalue {worst:.3e} (relative) below the "
            f"round-off clamp {-_GRAM_CLAMP:.0e}"
        )

    if tall:
        image = arr @ basis  # columns a v_i, (k, m, n)
    else:
        image = np.conj(np.swapaxes(arr, -1, -2)) @ basis  # a^H u_i, (k, n, m)
    sig = np.sqrt((image.real**2 + image.imag**2).sum(axis=1))  # (k, q)

    order = np.argsort(-sig, axis=1, kind="stable")
    sig = np.take_along_axis(sig, order, axis=1)
    if not want_vectors:
        return SpectrumResult(singular_values=sig[0] if single else sig)

    basis = np.take_along_axis(basis, order[:, None, :], axis=2)
    image = np.take_along_axis(image, order[:, None, :], axis=2)
    # Normalize image columns into the missing orthonormal side; where a
    # singular value is numerically zero the direction is noise, so the
    # column is replaced by deterministic basis completion instead.
    cutoff = np.maximum(m, n) * _EPS * 8.0 * np.maximum(sig[:, 0], 1e-300)
    ok = sig > cutoff[:, None]
    denom = np.where(ok, sig, 1.0)
    other = image / denom[:, None, :]
    for idx in range(k):
        deficient = np.flatnonzero(~ok[idx])
        if deficient.size:
            _fill_orthonormal(other[idx], deficient.tolist())
    if tall:
        left, right = other, basis
    else:
        left, right = basis, other
    if single:
        return SpectrumResult(sig[0], left_vectors=left[0], right_vectors=right[0])
    return SpectrumResult(sig, left_vectors=left, right_vectors=right)


def trace_norm(a):
    """Sum of all singular values (Ky Fan / trace norm)."""
    s = svd(a).singular_values
    total = s.sum(axis=-1)
    return float(total) if np.ndim(total) == 0 else total
