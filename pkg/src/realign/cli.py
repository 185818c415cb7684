"""Command-line frontend.

Subcommands:

* ``check``       -- criteria report for one state (catalog spec or JSON file)
* ``sweep-fig1``  -- (a, p) sweep of the bound-entangled 3x3 mixture
* ``sweep-fig2``  -- (a, p) sweep of the two-qubit mixture family
* ``search``      -- detection statistics over seeded random states
* ``compare``     -- log N vs N-1 vs E_f over a family grid

Exit codes: 0 = no entanglement detected, 2 = entanglement detected
(``check`` only), 1 = any error.  Sweeps write CSV; ``--plot`` also
renders a PNG next to it.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import bipartite, criteria, matrixfile, plotting, states, sweeps
from .errors import ValidationError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DETECTED = 2


def _common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--tol",
        type=float,
        default=criteria.DETECTION_TOL,
        help="detection tolerance (default %(default)g)",
    )
    parser.add_argument(
        "--log-base",
        choices=["2", "e"],
        default=criteria.DEFAULT_LOG_BASE,
        help="base for log N (default %(default)s)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realign",
        description="Bipartite entanglement detection via matrix realignment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser(
        "check",
        help="run the realignment, dual, PPT (and pure-product) tests on one state",
        description=(
            "State is either a catalog spec (e.g. 'check horodecki3x3 a=0.236', "
            f"families: {', '.join(states.FAMILIES)}) or --file matrix.json "
            "with keys m, n, re, im."
        ),
    )
    p_check.add_argument("spec", nargs="*", help="family name plus key=value params")
    p_check.add_argument("--file", help="JSON matrix file instead of a catalog spec")
    p_check.add_argument(
        "--normalize-trace",
        action="store_true",
        help="rescale a trace within 1e-6 of 1 instead of rejecting it",
    )
    _common_options(p_check)

    p_f1 = sub.add_parser(
        "sweep-fig1",
        help="sweep the 3x3 bound-entangled mixture over an (a, p) grid",
    )
    p_f1.add_argument("--grid-a", default="0.005:0.995:0.005", metavar="lo:hi:step")
    p_f1.add_argument("--grid-p", default="0.0:1.0:0.005", metavar="lo:hi:step")
    p_f1.add_argument("--out", required=True, help="CSV output path")
    p_f1.add_argument("--plot", action="store_true", help="render a PNG next to the CSV")
    _common_options(p_f1)

    p_f2 = sub.add_parser(
        "sweep-fig2",
        help="sweep the two-qubit mixture family over an (a, p) grid",
    )
    p_f2.add_argument("--grid-a", default="0.0:1.0:0.02", metavar="lo:hi:step")
    p_f2.add_argument("--grid-p", default="0.0:1.0:0.02", metavar="lo:hi:step")
    p_f2.add_argument("--out", required=True, help="CSV output path")
    p_f2.add_argument("--plot", action="store_true", help="render a PNG next to the CSV")
    _common_options(p_f2)

    p_search = sub.add_parser(
        "search",
        help="detection statistics over seeded random states",
    )
    p_search.add_argument("--m", type=int, default=2, help="dimension of subsystem A")
    p_search.add_argument("--n", type=int, default=2, help="dimension of subsystem B")
    p_search.add_argument("--count", type=int, default=10000, help="number of samples")
    p_search.add_argument("--seed", type=int, default=0, help="RNG seed")
    p_search.add_argument("--mode", choices=["mixed", "separable"], default="mixed")
    p_search.add_argument("--terms", type=int, default=10,
                          help="product terms per separable sample")
    p_search.add_argument("--rank", type=int, default=None,
                          help="rank of mixed samples (default: full)")
    p_search.add_argument("--out", help="optional per-sample CSV output path")
    p_search.add_argument("--plot", action="store_true",
                          help="render a PNG next to the CSV (needs --out)")
    _common_options(p_search)

    p_cmp = sub.add_parser(
        "compare",
        help="compare log N, N-1 and E_f over a family grid",
    )
    p_cmp.add_argument("--family", choices=["werner2", "two_by_two_family"],
                       required=True)
    p_cmp.add_argument("--grid-a", default=None, metavar="lo:hi:step",
                       help="parameter grid (phi for werner2, a otherwise)")
    p_cmp.add_argument("--grid-p", default=None, metavar="lo:hi:step",
                       help="p grid (two_by_two_family only)")
    p_cmp.add_argument("--out", required=True, help="CSV output path")
    p_cmp.add_argument("--plot", action="store_true", help="render a PNG next to the CSV")
    _common_options(p_cmp)

    return parser


def _write_csv(path, columns, rows, render=None) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(getattr(row, col)) for col in columns])
    if render is not None:
        render()


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        return repr(value)
    return value


def _plot_path(out: str) -> str:
    return str(Path(out).with_suffix(".png"))


def _load_state(args) -> bipartite.BipartiteState:
    if args.file and args.spec:
        raise ValidationError("give either a state spec or --file, not both")
    if args.file:
        mf = matrixfile.load_matrix(args.file)
        return bipartite.validate(
            mf.matrix, mf.m, mf.n, normalize_trace=args.normalize_trace
        )
    if not args.spec:
        raise ValidationError("no state given; pass a family spec or --file")
    spec = states.parse_state_spec(" ".join(args.spec))
    return states.build(spec)


def _cmd_check(args) -> int:
    state = _load_state(args)
    if state.trace_normalized:
        print("note: trace was auto-normalized to 1")
    base = args.log_base
    realignment = criteria.realignment_test(state, tol=args.tol, log_base=base)
    dual = criteria.dual_realignment_test(state, tol=args.tol, log_base=base)
    ppt = criteria.ppt_test(state, tol=args.tol)
    report = criteria.measures(state, log_base=base)

    print(f"state: {state.dim_a} x {state.dim_b}")
    print(f"N (realignment trace norm): {realignment.scalar:.9f}")
    print(f"log N (base {base}): {realignment.log_n:.9f}")
    print(f"f = max(0, log N): {report.f:.9f}")
    print(f"dual N (B x A reordering): {dual.scalar:.9f}")
    print(f"PPT minimum eigenvalue: {ppt.scalar:.9e}")
    if report.e_f is not None:
        print(f"entanglement of formation: {report.e_f:.9f}")
    verdicts = {"realignment": realignment, "ppt": ppt}
    purity = float((state.matrix.real**2 + state.matrix.imag**2).sum())
    if purity >= 1.0 - criteria.PURITY_TOL:
        verdicts["pure-product"] = criteria.pure_product_test(state, tol=args.tol)
    for name, rep in verdicts.items():
        verdict = "entangled" if rep.detected_entangled else "not detected"
        print(f"verdict {name}: {verdict}")
    detected = realignment.detected_entangled or ppt.detected_entangled
    print(f"overall: {'entangled' if detected else 'no entanglement detected'}")
    return EXIT_DETECTED if detected else EXIT_OK


def _cmd_sweep_fig1(args) -> int:
    rows, summary = sweeps.sweep_fig1(
        sweeps.parse_grid(args.grid_a),
        sweeps.parse_grid(args.grid_p),
        tol=args.tol,
        log_base=args.log_base,
    )
    render = None
    if args.plot:
        render = lambda: plotting.render_sweep(
            rows, _plot_path(args.out),
            title="bound-entangled 3x3 mixture: f over (a, p)",
        )
    _write_csv(args.out, ["a", "p", "n", "log_n", "f", "ppt_min_eig"], rows, render)
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.plot:
        print(f"wrote figure to {_plot_path(args.out)}")
    print(f"max f on the p=1 slice: {summary.max_f:.6f} at a = {summary.argmax_a:g}")
    if summary.threshold_p is None:
        print(f"no f > 0 threshold in p on [0.99, 1] at a = {summary.threshold_a:g}")
    else:
        print(
            f"f > 0 threshold at a = {summary.threshold_a:g}: "
            f"p = {summary.threshold_p:.5f} (bisection)"
        )
    return EXIT_OK


def _cmd_sweep_fig2(args) -> int:
    rows, summary = sweeps.sweep_fig2(
        sweeps.parse_grid(args.grid_a),
        sweeps.parse_grid(args.grid_p),
        tol=args.tol,
        log_base=args.log_base,
    )
    render = None
    if args.plot:
        render = lambda: plotting.render_sweep(
            rows, _plot_path(args.out), flag_missed=True,
            title="two-qubit mixture family: f over (a, p)",
        )
    _write_csv(
        args.out,
        ["a", "p", "n", "log_n", "f", "ppt_min_eig", "e_f", "npt_f0"],
        rows,
        render,
    )
    print(f"wrote {summary.points} rows to {args.out}")
    if args.plot:
        print(f"wrote figure to {_plot_path(args.out)}")
    print(f"realignment detections: {summary.detected}/{summary.points}")
    print(f"NPT-entangled points with f = 0: {summary.npt_f0_points}")
    print(
        "max f on the separable lines (p=1/2, a=0, a=1): "
        f"{summary.max_f_on_separable_lines:.3e}"
    )
    held = summary.points - summary.nm1_le_ef_violations
    print(
        f"N-1 <= E_f held on {held}/{summary.points} points "
        f"(max excess {summary.nm1_le_ef_max_excess:.6f})"
    )
    print(
        f"orderings of log N vs E_f: log N greater at {summary.logn_gt_ef_points}, "
        f"smaller at {summary.logn_lt_ef_points}"
    )
    return EXIT_OK


def _cmd_search(args) -> int:
    if args.plot and not args.out:
        raise ValidationError("--plot needs --out to know where to write")
    rows, summary = sweeps.run_search(
        args.m,
        args.n,
        args.count,
        seed=args.seed,
        mode=args.mode,
        terms=args.terms,
        rank=args.rank,
        tol=args.tol,
        log_base=args.log_base,
    )
    if args.out:
        render = None
        if args.plot:
            render = lambda: plotting.render_search(
                rows, _plot_path(args.out),
                title=f"random {args.mode} states, {args.m}x{args.n}, seed {args.seed}",
            )
        _write_csv(
            args.out,
            ["index", "n", "log_n", "ppt_min_eig",
             "realignment_detected", "ppt_detected"],
            rows,
            render,
        )
        print(f"wrote {len(rows)} rows to {args.out}")
        if args.plot:
            print(f"wrote figure to {_plot_path(args.out)}")
    total = summary.count
    print(
        f"mode={summary.mode} m={summary.m} n={summary.n} "
        f"count={total} seed={summary.seed}"
    )
    print(f"detected by both:        {summary.detected_both:8d} ({summary.detected_both / total:.2%})")
    print(f"realignment only:        {summary.realignment_only:8d} ({summary.realignment_only / total:.2%})")
    print(f"ppt only:                {summary.ppt_only:8d} ({summary.ppt_only / total:.2%})")
    print(f"neither:                 {summary.neither:8d} ({summary.neither / total:.2%})")
    print(f"max log N observed: {summary.max_log_n:.6f}")
    print(f"elapsed: {summary.seconds:.2f} s")
    if summary.mode == "separable" and summary.detected_both + summary.realignment_only + summary.ppt_only:
        print("warning: detections on separable input indicate a bug; inspect the CSV")
    if summary.mode == "mixed" and (summary.m, summary.n) == (2, 2) and summary.realignment_only:
        print(
            "warning: realignment-only detections in 2x2 (where NPT is complete); "
            "these samples deserve inspection"
        )
    return EXIT_OK


def _cmd_compare(args) -> int:
    if args.family == "werner2":
        if args.grid_p:
            raise ValidationError(
                "werner2 comparison takes only --grid-a (the phi grid); drop --grid-p"
            )
        a_grid = sweeps.parse_grid(args.grid_a or "0.334:1.0:0.002")
        p_grid = None
    else:
        a_grid = sweeps.parse_grid(args.grid_a or "0.0:1.0:0.02")
        p_grid = sweeps.parse_grid(args.grid_p or "0.0:1.0:0.02")
    rows, summary = sweeps.compare_family(
        args.family, a_grid, p_grid, tol=args.tol, log_base=args.log_base
    )
    render = None
    if args.plot:
        render = lambda: plotting.render_compare(
            rows, _plot_path(args.out), title=f"measure comparison: {args.family}",
        )
    _write_csv(args.out, ["a", "p", "log_n", "n_minus_one", "e_f"], rows, render)
    print(f"wrote {summary.points} rows to {args.out}")
    if args.plot:
        print(f"wrote figure to {_plot_path(args.out)}")
    print(
        "log N >= E_f - tol: "
        + ("held on the whole grid" if summary.logn_ge_ef_holds
           else f"failed at {summary.logn_lt_ef_points} points")
    )
    print(
        f"orderings of log N vs E_f: log N greater at {summary.logn_gt_ef_points}, "
        f"smaller at {summary.logn_lt_ef_points}"
    )
    print(
        f"N-1 <= E_f + tol: violated at {summary.nm1_le_ef_violations} of "
        f"{summary.points} points (max excess {summary.nm1_le_ef_max_excess:.6f})"
    )
    print(f"max |E_f - (N-1)|: {summary.max_abs_ef_minus_nm1:.6f}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": _cmd_check,
        "sweep-fig1": _cmd_sweep_fig1,
        "sweep-fig2": _cmd_sweep_fig2,
        "search": _cmd_search,
        "compare": _cmd_compare,
    }
    try:
        return handlers[args.command](args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
