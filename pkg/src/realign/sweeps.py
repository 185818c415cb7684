"""Parameter sweeps, random-search statistics and measure comparisons.

Everything here is a pure function from (grids, seed) to rows plus a
typed summary; the CLI layer handles printing, CSV and figures.  Grid
points are evaluated in vectorized stacks, ordered a-major then
p-major, and every output is deterministic for fixed inputs and seed
(wall-clock fields aside).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import criteria, states
from .criteria import DETECTION_TOL
from .errors import NumericalError, ValidationError


def parse_grid(text: str) -> np.ndarray:
    """Parse ``lo:hi:step`` into an inclusive, evenly spaced grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must be lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(x) for x in parts)
    except ValueError:
        raise ValidationError(f"grid bounds must be numbers, got {text!r}") from None
    if step <= 0.0:
        raise ValidationError(f"grid step must be positive, got {step}")
    if hi < lo:
        raise ValidationError(f"grid upper bound {hi} below lower bound {lo}")
    count = int(np.floor((hi - lo) / step + 1e-9))
    values = lo + step * np.arange(count + 1)
    return np.minimum(values, hi)


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep: coordinates, measures, PPT scalar."""

    a: float
    p: float
    n: float
    log_n: float
    f: float
    ppt_min_eig: float
    e_f: float | None = None
    npt_f0: bool | None = None


@dataclass(frozen=True)
class Fig1Summary:
    """Headline numbers of the bound-entangled-family sweep."""

    max_f: float
    argmax_a: float
    threshold_a: float
    threshold_p: float | None


@dataclass(frozen=True)
class Fig2Summary:
    """Aggregates of the two-qubit-family sweep."""

    points: int
    detected: int
    npt_f0_points: int
    max_f_on_separable_lines: float
    nm1_le_ef_violations: int
    nm1_le_ef_max_excess: float
    logn_gt_ef_points: int
    logn_lt_ef_points: int


def _rows_from_arrays(a_values, p_values, n_vals, pt_mins, log_base, e_f=None, tol=DETECTION_TOL):
    log_n = criteria._log(n_vals, log_base)
    rows = []
    idx = 0
    for a in a_values:
        for p in p_values:
            nv = float(n_vals[idx])
            ln = float(log_n[idx])
            row_ef = float(e_f[idx]) if e_f is not None else None
            flag = None
            if e_f is not None:
                flag = bool(pt_mins[idx] < -tol and nv <= 1.0 + tol)
            rows.append(
                SweepRow(
                    a=float(a),
                    p=float(p),
                    n=nv,
                    log_n=ln,
                    f=max(0.0, ln),
                    ppt_min_eig=float(pt_mins[idx]),
                    e_f=row_ef,
                    npt_f0=flag,
                )
            )
            idx += 1
    return rows


def horodecki_threshold_p(
    a: float,
    lo: float = 0.99,
    hi: float = 1.0,
    *,
    xtol: float = 1e-5,
    tol: float = DETECTION_TOL,
) -> float | None:
    """Bisect for the p above which the realignment norm exceeds 1.

    Monotonicity of N in p over [lo, hi] is an assumption of the
    bisection; it is asserted on an 11-point sample first.  Returns
    None when N never exceeds 1 on the bracket.
    """
    samples = np.linspace(lo, hi, 11)
    n_vals = criteria.realignment_norms(
        states.horodecki_mix_stack(np.array([a]), samples), 3, 3
    )
    if (np.diff(n_vals) < -1e-10).any():
        raise NumericalError(
            f"realignment norm is not monotone in p on [{lo}, {hi}] at a={a}; "
            "bisection bracket invalid"
        )
    if n_vals[-1] <= 1.0 + tol:
        return None
    if n_vals[0] > 1.0 + tol:
        return lo
    p_lo, p_hi = lo, hi
    while p_hi - p_lo > xtol:
        mid = (p_lo + p_hi) / 2.0
        n_mid = criteria.realignment_norms(
            states.horodecki_mix_stack(np.array([a]), np.array([mid])), 3, 3
        )[0]
        if n_mid > 1.0 + tol:
            p_hi = mid
        else:
            p_lo = mid
    return (p_lo + p_hi) / 2.0


def sweep_fig1(
    a_values: np.ndarray,
    p_values: np.ndarray,
    *,
    tol: float = DETECTION_TOL,
    log_base=None,
) -> tuple[list[SweepRow], Fig1Summary]:
    """Sweep the bound-entangled 3x3 mixture over an (a, p) grid.

    The summary always reports the argmax of f along the p = 1 slice of
    the a-grid (computed separately if p = 1 is not a grid line) and
    the p-threshold at that argmax, found by bisection.
    """
    a_values = np.asarray(a_values, dtype=float)
    p_values = np.asarray(p_values, dtype=float)
    if a_values.size == 0 or p_values.size == 0:
        raise ValidationError("sweep grids must be non-empty")
    if a_values.min() <= 0.0 or a_values.max() >= 1.0:
        raise ValidationError("a-grid must lie strictly inside (0, 1)")
    if p_values.min() < 0.0 or p_values.max() > 1.0:
        raise ValidationError("p-grid must lie in [0, 1]")
    stack = states.horodecki_mix_stack(a_values, p_values)
    n_vals = criteria.realignment_norms(stack, 3, 3)
    pt_mins = criteria.min_pt_eigenvalues(stack, 3, 3)
    rows = _rows_from_arrays(a_values, p_values, n_vals, pt_mins, log_base, tol=tol)

    n_top = criteria.realignment_norms(
        states.horodecki_mix_stack(a_values, np.array([1.0])), 3, 3
    )
    f_top = np.maximum(0.0, criteria._log(n_top, log_base))
    best = int(np.argmax(f_top))
    argmax_a = float(a_values[best])
    threshold = horodecki_threshold_p(argmax_a, tol=tol)
    summary = Fig1Summary(
        max_f=float(f_top[best]),
        argmax_a=argmax_a,
        threshold_a=argmax_a,
        threshold_p=threshold,
    )
    return rows, summary


def sweep_fig2(
    a_values: np.ndarray,
    p_values: np.ndarray,
    *,
    tol: float = DETECTION_TOL,
    log_base=None,
) -> tuple[list[SweepRow], Fig2Summary]:
    """Sweep the two-qubit mixture family over an (a, p) grid.

    Rows carry the PPT scalar and the entanglement of formation next to
    the realignment measures; grid points that are NPT-entangled yet
    have f = 0 (entanglement the realignment norm misses) are flagged.
    The summary also counts, honestly, how the orderings between N - 1,
    log N and E_f came out on this grid.
    """
    a_values = np.asarray(a_values, dtype=float)
    p_values = np.asarray(p_values, dtype=float)
    if a_values.size == 0 or p_values.size == 0:
        raise ValidationError("sweep grids must be non-empty")
    if a_values.min() < 0.0 or a_values.max() > 1.0 or p_values.min() < 0.0 or p_values.max() > 1.0:
        raise ValidationError("fig2 grids must lie in [0, 1]")
    stack = states.two_by_two_stack(a_values, p_values)
    n_vals = criteria.realignment_norms(stack, 2, 2)
    pt_mins = criteria.min_pt_eigenvalues(stack, 2, 2)
    e_f = criteria.formation_entropies(criteria.concurrences(stack))
    rows = _rows_from_arrays(a_values, p_values, n_vals, pt_mins, log_base, e_f=e_f, tol=tol)

    f_vals = np.array([row.f for row in rows])
    flags = np.array([bool(row.npt_f0) for row in rows])
    on_lines = np.zeros(len(rows), dtype=bool)
    idx = 0
    for a in a_values:
        for p in p_values:
            on_lines[idx] = abs(p - 0.5) < 1e-12 or a < 1e-12 or a > 1.0 - 1e-12
            idx += 1
    log_n = np.array([row.log_n for row in rows])
    nm1 = n_vals - 1.0
    excess = nm1 - e_f
    summary = Fig2Summary(
        points=len(rows),
        detected=int((n_vals > 1.0 + tol).sum()),
        npt_f0_points=int(flags.sum()),
        max_f_on_separable_lines=float(f_vals[on_lines].max()) if on_lines.any() else 0.0,
        nm1_le_ef_violations=int((excess > tol).sum()),
        nm1_le_ef_max_excess=float(excess.max()),
        logn_gt_ef_points=int((log_n - e_f > tol).sum()),
        logn_lt_ef_points=int((log_n - e_f < -tol).sum()),
    )
    return rows, summary


# ---------------------------------------------------------------------------
# Random search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchRow:
    """Per-sample outcome of a random search."""

    index: int
    n: float
    log_n: float
    ppt_min_eig: float
    realignment_detected: bool
    ppt_detected: bool


@dataclass(frozen=True)
class SearchSummary:
    """Detection statistics over a batch of random states."""

    m: int
    n: int
    count: int
    mode: str
    seed: int
    detected_both: int
    realignment_only: int
    ppt_only: int
    neither: int
    max_log_n: float
    seconds: float


_SEARCH_CHUNK = 20000


def run_search(
    m: int,
    n: int,
    count: int,
    seed: int = 0,
    mode: str = "mixed",
    *,
    terms: int = 10,
    rank: int | None = None,
    tol: float = DETECTION_TOL,
    log_base=None,
) -> tuple[list[SearchRow], SearchSummary]:
    """Draw ``count`` random states and tabulate detector agreement.

    mode='mixed' draws Gram-matrix states of the given rank;
    mode='separable' draws convex mixtures of ``terms`` product states
    (for which any detection would be a bug, not a discovery).
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if mode not in ("mixed", "separable"):
        raise ValidationError(f"mode must be 'mixed' or 'separable', got {mode!r}")
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    rows: list[SearchRow] = []
    both = r_only = p_only = neither = 0
    max_log_n = -np.inf
    done = 0
    while done < count:
        chunk = min(_SEARCH_CHUNK, count - done)
        if mode == "mixed":
            stack = states.random_mixed_stack(rng, m, n, chunk, rank=rank)
        else:
            stack = states.random_separable_stack(rng, m, n, chunk, terms=terms)
        n_vals = criteria.realignment_norms(stack, m, n)
        pt_mins = criteria.min_pt_eigenvalues(stack, m, n)
        log_n = criteria._log(n_vals, log_base)
        r_det = n_vals > 1.0 + tol
        p_det = pt_mins < -tol
        both += int((r_det & p_det).sum())
        r_only += int((r_det & ~p_det).sum())
        p_only += int((~r_det & p_det).sum())
        neither += int((~r_det & ~p_det).sum())
        max_log_n = max(max_log_n, float(log_n.max()))
        for i in range(chunk):
            rows.append(
                SearchRow(
                    index=done + i,
                    n=float(n_vals[i]),
                    log_n=float(log_n[i]),
                    ppt_min_eig=float(pt_mins[i]),
                    realignment_detected=bool(r_det[i]),
                    ppt_detected=bool(p_det[i]),
                )
            )
        done += chunk
    summary = SearchSummary(
        m=m,
        n=n,
        count=count,
        mode=mode,
        seed=seed,
        detected_both=both,
        realignment_only=r_only,
        ppt_only=p_only,
        neither=neither,
        max_log_n=max_log_n,
        seconds=time.perf_counter() - start,
    )
    return rows, summary


# ---------------------------------------------------------------------------
# Measure comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompareRow:
    """Measures of one comparison point (one- or two-parameter family)."""

    a: float
    p: float | None
    log_n: float
    n_minus_one: float
    e_f: float


@dataclass(frozen=True)
class CompareSummary:
    """How the orderings between log N, N - 1 and E_f came out."""

    family: str
    points: int
    logn_ge_ef_holds: bool
    logn_gt_ef_points: int
    logn_lt_ef_points: int
    nm1_le_ef_violations: int
    nm1_le_ef_max_excess: float
    max_abs_ef_minus_nm1: float


def compare_family(
    family: str,
    a_values: np.ndarray,
    p_values: np.ndarray | None = None,
    *,
    tol: float = DETECTION_TOL,
    log_base=None,
) -> tuple[list[CompareRow], CompareSummary]:
    """Tabulate (log N, N-1, E_f) over a family grid.

    For ``werner2`` the a-grid is the mixing parameter phi and no
    p-grid applies; for ``two_by_two_family`` both grids are used.
    """
    a_values = np.asarray(a_values, dtype=float)
    if family == "werner2":
        if p_values is not None and np.asarray(p_values).size:
            raise ValidationError("werner2 comparison takes only the a-grid (phi)")
        stack = states.werner2_stack(a_values)
        coords = [(float(phi), None) for phi in a_values]
        m_dim = n_dim = 2
    elif family == "two_by_two_family":
        if p_values is None or np.asarray(p_values).size == 0:
            raise ValidationError("two_by_two_family comparison needs a p-grid")
        p_values = np.asarray(p_values, dtype=float)
        stack = states.two_by_two_stack(a_values, p_values)
        coords = [(float(a), float(p)) for a in a_values for p in p_values]
        m_dim = n_dim = 2
    else:
        raise ValidationError(
            f"comparison supports werner2 and two_by_two_family, got {family!r}"
        )
    n_vals = criteria.realignment_norms(stack, m_dim, n_dim)
    log_n = criteria._log(n_vals, log_base)
    e_f = criteria.formation_entropies(criteria.concurrences(stack))
    rows = [
        CompareRow(
            a=coord[0],
            p=coord[1],
            log_n=float(log_n[i]),
            n_minus_one=float(n_vals[i] - 1.0),
            e_f=float(e_f[i]),
        )
        for i, coord in enumerate(coords)
    ]
    nm1 = n_vals - 1.0
    excess = nm1 - e_f
    summary = CompareSummary(
        family=family,
        points=len(rows),
        logn_ge_ef_holds=bool((log_n >= e_f - tol).all()),
        logn_gt_ef_points=int((log_n - e_f > tol).sum()),
        logn_lt_ef_points=int((log_n - e_f < -tol).sum()),
        nm1_le_ef_violations=int((excess > tol).sum()),
        nm1_le_ef_max_excess=float(excess.max()),
        max_abs_ef_minus_nm1=float(np.abs(e_f - nm1).max()),
    )
    return rows, summary
