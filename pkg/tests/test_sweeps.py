"""Grid sweeps, threshold bisection, random search, measure comparison."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from realign import sweeps
from realign.errors import ValidationError


# ---------------------------------------------------------------------------
# parse_grid


def test_parse_grid_inclusive_endpoints():
    np.testing.assert_allclose(
        sweeps.parse_grid("0.0:1.0:0.25"), [0.0, 0.25, 0.5, 0.75, 1.0]
    )


def test_parse_grid_single_point():
    np.testing.assert_allclose(sweeps.parse_grid("0.5:0.5:0.1"), [0.5])


def test_parse_grid_endpoint_not_on_step_stays_inside():
    g = sweeps.parse_grid("0.0:1.0:0.3")
    np.testing.assert_allclose(g, [0.0, 0.3, 0.6, 0.9])


def test_parse_grid_rejects_malformed():
    for text in ("", "1:2", "a:b:c", "0:1:0", "0:1:-0.1", "1:0:0.1"):
        with pytest.raises(ValidationError):
            sweeps.parse_grid(text)


# ---------------------------------------------------------------------------
# fig1 sweep (3x3 mixture grid)


def test_sweep_fig1_small_grid():
    a = sweeps.parse_grid("0.1:0.9:0.1")
    p = sweeps.parse_grid("0.0:1.0:0.25")
    rows, summary = sweeps.sweep_fig1(a, p)
    assert len(rows) == len(a) * len(p)
    # Rows are a-major and f == max(0, log_n) exactly.
    assert rows[0].a == 0.1 and rows[1].a == 0.1
    for r in rows:
        assert r.f == max(0.0, r.log_n)
    # On this family nothing is PPT-detected anywhere.
    assert all(r.ppt_min_eig > -1e-9 for r in rows)
    # Detection only appears near p = 1.
    detected = [r for r in rows if r.f > 0]
    assert detected and all(r.p == 1.0 for r in detected)
    assert summary.max_f > 0
    assert summary.threshold_p is not None
    assert 0.99 < summary.threshold_p < 1.0


def test_sweep_fig1_summary_argmax_on_fine_a_grid():
    a = sweeps.parse_grid("0.21:0.26:0.001")
    p = np.array([1.0])
    _, summary = sweeps.sweep_fig1(a, p)
    assert abs(summary.argmax_a - 0.236) < 1e-12
    assert abs(summary.max_f - 0.004406171720834732) < 1e-9
    assert summary.threshold_a == summary.argmax_a


def test_sweep_fig1_rejects_bad_grids():
    with pytest.raises(ValidationError):
        sweeps.sweep_fig1(np.array([0.0, 0.5]), np.array([1.0]))  # a=0 illegal
    with pytest.raises(ValidationError):
        sweeps.sweep_fig1(np.array([0.5]), np.array([1.5]))  # p out of range


def test_threshold_bisection_brackets_and_converges():
    t = sweeps.horodecki_threshold_p(0.236, xtol=1e-6)
    assert t is not None
    assert abs(t - 0.99545) < 1e-3
    # Detection really flips across the returned threshold.
    from realign import criteria, states

    below = criteria.realignment_test(states.horodecki_mix(0.236, t - 1e-4))
    above = criteria.realignment_test(states.horodecki_mix(0.236, t + 1e-4))
    assert not below.detected_entangled
    assert above.detected_entangled


def test_threshold_bisection_none_when_never_detected():
    # On a bracket that stops short of the onset the search reports None.
    assert sweeps.horodecki_threshold_p(0.9, 0.99, 0.999) is None
    # ... while the default bracket reaching p=1 finds the crossing.
    t = sweeps.horodecki_threshold_p(0.9)
    assert t is not None and 0.999 < t < 1.0


# ---------------------------------------------------------------------------
# fig2 sweep (2x2 two-parameter family)


def test_sweep_fig2_small_grid():
    a = sweeps.parse_grid("0.0:1.0:0.1")
    p = sweeps.parse_grid("0.0:1.0:0.1")
    rows, summary = sweeps.sweep_fig2(a, p)
    assert summary.points == len(rows) == 121
    assert summary.detected == sum(r.f > 0 for r in rows)
    assert summary.detected > 0
    # Every row carries an E_f value on this 2x2 family.
    assert all(r.e_f is not None for r in rows)
    # Some NPT points with zero f exist (PPT detects, realignment missed).
    assert summary.npt_f0_points > 0
    flagged = [r for r in rows if r.npt_f0]
    assert len(flagged) == summary.npt_f0_points
    for r in flagged:
        assert r.ppt_min_eig < -1e-9 and r.f == 0.0
    # f vanishes on the separable boundary lines p = 1/2, a in {0, 1}.
    assert summary.max_f_on_separable_lines <= 1e-12
    # Ordering tallies are internally consistent.
    assert summary.logn_gt_ef_points + summary.logn_lt_ef_points <= summary.points
    assert summary.nm1_le_ef_violations >= 0


def test_sweep_fig2_ordering_counts_both_signs():
    a = sweeps.parse_grid("0.02:0.98:0.02")
    p = sweeps.parse_grid("0.02:0.98:0.02")
    _, summary = sweeps.sweep_fig2(a, p)
    # Both strict orderings between log N and E_f occur on the interior.
    assert summary.logn_gt_ef_points > 0
    assert summary.logn_lt_ef_points > 0
    # And the N-1 <= E_f comparison is violated on a large region.
    assert summary.nm1_le_ef_violations > 0
    assert summary.nm1_le_ef_max_excess > 0.1


# ---------------------------------------------------------------------------
# random search


def test_run_search_is_deterministic_given_seed():
    rows1, sum1 = sweeps.run_search(2, 2, 500, seed=21, mode="mixed")
    rows2, sum2 = sweeps.run_search(2, 2, 500, seed=21, mode="mixed")
    assert rows1 == rows2
    a = dataclasses.asdict(sum1)
    b = dataclasses.asdict(sum2)
    a.pop("seconds"), b.pop("seconds")
    assert a == b
    _, sum3 = sweeps.run_search(2, 2, 500, seed=22, mode="mixed")
    c = dataclasses.asdict(sum3)
    c.pop("seconds")
    assert c != a


def test_run_search_counts_are_consistent():
    rows, summary = sweeps.run_search(3, 3, 300, seed=4, mode="mixed")
    assert len(rows) == 300
    total = (
        summary.detected_both
        + summary.realignment_only
        + summary.ppt_only
        + summary.neither
    )
    assert total == 300
    assert summary.max_log_n == max(r.log_n for r in rows)
    assert summary.seconds > 0


def test_run_search_mixed_two_qubit_realignment_never_alone():
    # In 2x2 the PT criterion is complete, so realignment-only hits are
    # impossible; any would indicate a numerics bug.
    _, summary = sweeps.run_search(2, 2, 2000, seed=3, mode="mixed")
    assert summary.realignment_only == 0
    assert summary.detected_both > 0


def test_run_search_separable_mode_detects_nothing():
    _, summary = sweeps.run_search(2, 3, 400, seed=8, mode="separable", terms=6)
    assert summary.detected_both == 0
    assert summary.realignment_only == 0
    assert summary.ppt_only == 0
    assert summary.neither == 400
    assert summary.max_log_n <= 0.0


def test_run_search_rejects_bad_arguments():
    with pytest.raises(ValidationError):
        sweeps.run_search(2, 2, 0)
    with pytest.raises(ValidationError):
        sweeps.run_search(2, 2, 10, mode="bogus")


# ---------------------------------------------------------------------------
# measure comparison


def test_compare_werner_grid():
    phi = sweeps.parse_grid("0.34:1.0:0.01")
    rows, summary = sweeps.compare_family("werner2", phi)
    assert summary.family == "werner2"
    assert summary.points == len(rows) == len(phi)
    # log N dominates E_f across the entangled Werner line.
    assert summary.logn_ge_ef_holds
    # N-1 tracks the concurrence, which exceeds E_f strictly inside (0, 1):
    # the comparison against E_f is violated over most of the line.
    assert summary.nm1_le_ef_violations > 0
    assert 0.14 < summary.nm1_le_ef_max_excess < 0.16
    assert 0.14 < summary.max_abs_ef_minus_nm1 < 0.16


def test_compare_werner_rejects_p_grid():
    with pytest.raises(ValidationError):
        sweeps.compare_family("werner2", np.array([0.5]), np.array([0.5]))


def test_compare_two_by_two_grid():
    a = sweeps.parse_grid("0.1:0.9:0.1")
    p = sweeps.parse_grid("0.1:0.9:0.1")
    rows, summary = sweeps.compare_family("two_by_two_family", a, p)
    assert summary.points == len(rows) == 81
    assert summary.logn_gt_ef_points > 0
    assert summary.logn_lt_ef_points > 0


def test_compare_boundary_measures_vanish_together():
    # At the Werner separability boundary all three measures go to zero
    # at once; the same holds along the a in {0, 1} edges of the two-qubit
    # family, where the pure component is a product state.
    rows, _ = sweeps.compare_family("werner2", np.array([1.0 / 3.0]))
    assert abs(rows[0].n_minus_one) < 1e-9
    assert abs(rows[0].log_n) < 1e-9
    assert abs(rows[0].e_f) < 1e-9

    rows2, _ = sweeps.compare_family(
        "two_by_two_family", np.array([0.0, 1.0]), np.array([0.2, 0.8])
    )
    for row in rows2:
        assert row.n_minus_one <= 1e-9
        assert row.log_n <= 1e-9
        assert abs(row.e_f) < 1e-9


def test_compare_rejects_unknown_family():
    with pytest.raises(ValidationError):
        sweeps.compare_family("isotropic", np.array([0.5]))
