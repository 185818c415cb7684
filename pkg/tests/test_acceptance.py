"""Acceptance gate: the quantitative claims this package is built to meet.

Each test pins one claim at its stated tolerance; a terminal-summary hook
(see conftest.py) prints one PASS/FAIL line per check.  Two sub-claims of
check 10 are mathematically unattainable as written — the quantity they
bound by the formation entropy is actually the concurrence — and are encoded
as strict expected failures, each paired with a passing companion test that
pins the deviation and the relation that does hold.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from _helpers import complex_normal, haar_unitary, random_hermitian

from realign import bipartite, criteria, linalg, states, sweeps

GRID_22 = np.linspace(0.0, 1.0, 51)  # canonical 2x2 family grid, step 0.02


def _fig2_summary():
    return sweeps.sweep_fig2(GRID_22, GRID_22)


# ---------------------------------------------------------------------------


def test_c01_tiles_log_norm():
    """Tiles state: log2 N = 0.121 +/- 0.001, computed in under a second."""
    start = time.perf_counter()
    rep = criteria.realignment_test(states.tiles_upb())
    elapsed = time.perf_counter() - start
    assert abs(rep.log_n - 0.121) <= 0.001, rep.log_n
    assert rep.detected_entangled
    assert elapsed < 1.0, f"took {elapsed:.3f} s"


def test_c02_pyramid_log_norm():
    """Pyramid state: log2 N = 0.134 +/- 0.001 in the same base as check 1."""
    rep = criteria.realignment_test(states.pyramid_upb())
    assert abs(rep.log_n - 0.134) <= 0.001, rep.log_n


def test_c03_bound_entanglement_peak_on_fine_grid():
    """3x3 mixture at p=1: max f = 0.0044 +/- 0.0005 at a = 0.236 +/- 0.005
    on a 0.001 grid, while ppt_test stays silent on every bound-entangled
    state involved."""
    a_grid = np.arange(0.001, 1.0, 0.001)
    stack = states.horodecki_mix_stack(a_grid, np.array([1.0]))
    n_vals = criteria.realignment_norms(stack, 3, 3)
    f_vals = np.maximum(0.0, np.log2(n_vals))
    k = int(np.argmax(f_vals))
    assert abs(f_vals[k] - 0.0044) <= 0.0005, f_vals[k]
    assert abs(a_grid[k] - 0.236) <= 0.005, a_grid[k]
    for s in (states.tiles_upb(), states.pyramid_upb(), states.horodecki3x3(0.236)):
        assert not criteria.ppt_test(s).detected_entangled
        assert criteria.realignment_test(s).detected_entangled


def test_c04_threshold_bisection_and_sweep_budget():
    """At a = 0.236 the f > 0 onset in p sits at 0.9955 +/- 0.0005 by
    bisection, and a 200 x 200 sweep finishes inside 60 s."""
    t = sweeps.horodecki_threshold_p(0.236, xtol=1e-5)
    assert t is not None
    assert abs(t - 0.9955) <= 0.0005, t
    a_grid = np.linspace(0.0025, 0.9975, 200)
    p_grid = np.linspace(0.0, 0.995, 200)
    start = time.perf_counter()
    rows, summary = sweeps.sweep_fig1(a_grid, p_grid)
    elapsed = time.perf_counter() - start
    assert len(rows) == 40000
    assert elapsed < 60.0, f"sweep took {elapsed:.1f} s"


def test_c05_extremal_norm_identities():
    """N(max_mixed d) = 1/d and N(max_entangled d) = d within 1e-9 for
    d in {2, 3, 4}."""
    for d in (2, 3, 4):
        low = criteria.realignment_test(states.max_mixed(d)).scalar
        high = criteria.realignment_test(states.max_entangled(d)).scalar
        assert abs(low - 1.0 / d) <= 1e-9, (d, low)
        assert abs(high - d) <= 1e-9, (d, high)


def test_c06_no_false_positives_on_10k_separable_states():
    """10^4 seeded random separable states over (2,2), (2,3) and (3,3)
    yield zero realignment detections: N <= 1 + 1e-9 throughout."""
    rng = np.random.default_rng(20260814)
    worst = 0.0
    detections = 0
    for (m, n), count in (((2, 2), 3334), ((2, 3), 3333), ((3, 3), 3333)):
        drawn = 0
        for terms in (1, 2, 3, 5, 8, 13, 20):
            chunk = min(count - drawn, count // 7 + 1)
            if chunk <= 0:
                break
            stack = states.random_separable_stack(rng, m, n, chunk, terms=terms)
            n_vals = criteria.realignment_norms(stack, m, n)
            worst = max(worst, float(n_vals.max()))
            detections += int((n_vals > 1.0 + 1e-9).sum())
            drawn += chunk
        assert drawn >= count - 6  # full quota modulo rounding of the split
    assert detections == 0, f"{detections} false positives, worst N = {worst}"
    assert worst <= 1.0 + 1e-9, worst


def test_c07_local_unitary_invariance_on_1k_pairs():
    """10^3 random (state, local-unitary) pairs: |Delta log N| <= 1e-8."""
    rng = np.random.default_rng(71)
    worst = 0.0
    for m, n in ((2, 2), (2, 3), (3, 3)):
        count = 334 if (m, n) == (2, 2) else 333
        stack = states.random_mixed_stack(rng, m, n, count)
        rotated = np.empty_like(stack)
        for i in range(count):
            uv = np.kron(haar_unitary(rng, m), haar_unitary(rng, n))
            rotated[i] = uv @ stack[i] @ uv.conj().T
        base = np.log2(criteria.realignment_norms(stack, m, n))
        moved = np.log2(criteria.realignment_norms(rotated, m, n))
        worst = max(worst, float(np.abs(base - moved).max()))
    assert worst <= 1e-8, worst


def test_c08_partial_transpose_leaves_singular_values():
    """Singular-value lists of realign(rho) and realign(rho^T_A) agree
    element-wise within 1e-9 on 10^3 random states."""
    rng = np.random.default_rng(72)
    worst = 0.0
    for m, n in ((2, 2), (2, 3), (3, 3)):
        count = 334 if (m, n) == (2, 2) else 333
        stack = states.random_mixed_stack(rng, m, n, count)
        pt = bipartite._partial_transpose_array(stack, m, n, "A")
        sv = linalg.svd(bipartite._realign_array(stack, m, n)).singular_values
        sv_pt = linalg.svd(bipartite._realign_array(pt, m, n)).singular_values
        worst = max(worst, float(np.abs(sv - sv_pt).max()))
    assert worst <= 1e-9, worst


def test_c09_two_qubit_family_grid_structure():
    """On the 51 x 51 family grid, f vanishes on the separable lines
    (p = 1/2 and a in {0, 1}) and at least one grid point is NPT-entangled
    with f = 0, so the detector is not equivalent to the PT criterion even
    for two qubits."""
    rows, summary = _fig2_summary()
    assert summary.max_f_on_separable_lines == 0.0
    for r in rows:
        if r.p == 0.5 or r.a in (0.0, 1.0):
            assert r.f == 0.0, (r.a, r.p, r.f)
    assert summary.npt_f0_points >= 1
    missed = [r for r in rows if r.npt_f0]
    assert missed and all(r.ppt_min_eig < -1e-9 and r.f == 0.0 for r in missed)


# ---------------------------------------------------------------------------
# check 10: measure comparisons on two-qubit families


def _entangled_werner():
    phi = np.linspace(1.0 / 3.0 + 1e-3, 1.0, 300)
    stack = states.werner2_stack(phi)
    n_vals = criteria.realignment_norms(stack, 2, 2)
    c_vals = criteria.concurrences(stack)
    e_vals = criteria.formation_entropies(c_vals)
    return phi, n_vals, c_vals, e_vals


@pytest.mark.xfail(
    strict=True,
    reason=(
        "unattainable as stated: on entangled Werner states N-1 equals the "
        "concurrence, and the formation entropy is strictly below the "
        "concurrence except at C in {0, 1}; the measured deviation reaches "
        "0.1498 at phi ~ 0.607.  See test_c10a_companion for the relation "
        "that does hold."
    ),
)
def test_c10a_werner_formation_identity_as_stated():
    """Entangled 2x2 Werner states: |E_f - (N-1)| <= 1e-6 (strict xfail)."""
    _, n_vals, _, e_vals = _entangled_werner()
    dev = np.abs(e_vals - (n_vals - 1.0))
    assert dev.max() <= 1e-6, f"max |E_f - (N-1)| = {dev.max():.6f}"


def test_c10a_companion_deviation_and_exact_identity():
    """What holds on entangled Werner states: N-1 equals the concurrence
    (to the 1e-7 accuracy of the concurrence pipeline), and the deviation
    of E_f from N-1 is the documented 0.1498 hump, not a numerics bug."""
    _, n_vals, c_vals, e_vals = _entangled_werner()
    assert np.abs((n_vals - 1.0) - c_vals).max() <= 1e-7
    dev = np.abs(e_vals - (n_vals - 1.0))
    assert 0.14 < dev.max() < 0.16, dev.max()


def test_c10b_werner_log_norm_dominates_formation_entropy():
    """Entangled 2x2 Werner states: log2 N >= E_f - 1e-9."""
    _, n_vals, _, e_vals = _entangled_werner()
    gap = np.log2(n_vals) - e_vals
    assert gap.min() >= -1e-9, gap.min()


@pytest.mark.xfail(
    strict=True,
    reason=(
        "unattainable as stated: at p=1 the family is the pure state "
        "a|01> + b|10> with N-1 = 2ab = C > E_f strictly for 0 < a < 1, and "
        "the violation extends over most of the interior (3886 of 4949 "
        "nontrivial grid points, max excess 0.1498 near (0.70, 0.71)).  See "
        "test_c10c_companion for the concurrence bound that does hold."
    ),
)
def test_c10c_grid_norm_bounded_by_formation_entropy_as_stated():
    """Family grid: N - 1 <= E_f + 1e-9 everywhere (strict xfail)."""
    stack = states.two_by_two_stack(GRID_22, GRID_22)
    n_vals = criteria.realignment_norms(stack, 2, 2)
    e_vals = criteria.formation_entropies(criteria.concurrences(stack))
    excess = (n_vals - 1.0) - e_vals
    assert excess.max() <= 1e-9, f"max (N-1) - E_f = {excess.max():.6f}"


def test_c10c_companion_norm_bounded_by_concurrence():
    """What holds on the grid: N - 1 <= C + 1e-7, with the E_f comparison
    failing by the same 0.15-scale margin seen on the Werner line."""
    stack = states.two_by_two_stack(GRID_22, GRID_22)
    n_vals = criteria.realignment_norms(stack, 2, 2)
    c_vals = criteria.concurrences(stack)
    e_vals = criteria.formation_entropies(c_vals)
    assert ((n_vals - 1.0) - c_vals).max() <= 1e-7
    assert 0.14 < ((n_vals - 1.0) - e_vals).max() < 0.16


def test_c10d_grid_has_both_orderings_of_log_norm_and_entropy():
    """The family grid contains points with each sign of log N - E_f."""
    _, summary = _fig2_summary()
    assert summary.logn_gt_ef_points > 0
    assert summary.logn_lt_ef_points > 0


# ---------------------------------------------------------------------------


def test_c11_substituted_search_statistics():
    """Substitute for the non-reproducible random-family detection-rate
    figures: seeded search statistics that are deterministic per seed and
    report the detection split and the maximum log N observed."""
    rows1, s1 = sweeps.run_search(3, 3, 4000, seed=11, mode="mixed")
    rows2, s2 = sweeps.run_search(3, 3, 4000, seed=11, mode="mixed")
    assert rows1 == rows2
    assert (s1.detected_both, s1.realignment_only, s1.ppt_only, s1.neither) == (
        s2.detected_both,
        s2.realignment_only,
        s2.ppt_only,
        s2.neither,
    )
    assert s1.max_log_n == s2.max_log_n
    _, s3 = sweeps.run_search(3, 3, 4000, seed=12, mode="mixed")
    assert (s3.detected_both, s3.neither) != (s1.detected_both, s1.neither)
    # The statistics are informative: detections occur, misses occur, and
    # the best candidate is strictly entangled but below the d=3 ceiling.
    assert s1.detected_both + s1.realignment_only > 0
    assert s1.neither + s1.ppt_only > 0
    assert 0.0 < s1.max_log_n < np.log2(3.0)


def test_c12_numerical_core_residuals_and_identities():
    """100 random matrices up to 81 x 81: spectral reconstruction residuals
    <= 1e-10 * max(1, |A|_F); vec/Kronecker identities hold to 1e-12."""
    rng = np.random.default_rng(81)
    sizes = rng.integers(2, 82, size=100)
    sizes[0], sizes[1] = 81, 81  # exercise the stated ceiling
    for idx, d in enumerate(sizes):
        if idx % 5 < 3:  # general rectangular: SVD reconstruction
            m = int(d)
            n = int(rng.integers(2, 82))
            a = complex_normal(rng, (m, n))
            res = linalg.svd(a, want_vectors=True)
            approx = (res.left_vectors * res.singular_values) @ res.right_vectors.conj().T
            resid = np.linalg.norm(approx - a)
        else:  # Hermitian: eigendecomposition reconstruction
            h = random_hermitian(rng, int(d))
            w, v = linalg.hermitian_eigen(h)
            resid = np.linalg.norm((v * w) @ v.conj().T - h)
            a = h
        assert resid <= 1e-10 * max(1.0, np.linalg.norm(a)), (a.shape, resid)
    # vec(X Y Z) == kron(Z^T, X) vec(Y) at unit scale, 100 triples.
    for _ in range(100):
        m, k, l, n = rng.integers(1, 7, size=4)
        x = complex_normal(rng, (m, k))
        y = complex_normal(rng, (k, l))
        z = complex_normal(rng, (l, n))
        x /= max(1.0, np.linalg.norm(x))
        y /= max(1.0, np.linalg.norm(y))
        z /= max(1.0, np.linalg.norm(z))
        lhs = linalg.vec(x @ y @ z)
        rhs = linalg.kron(z.T, x) @ linalg.vec(y)
        assert np.abs(lhs - rhs).max() <= 1e-12
