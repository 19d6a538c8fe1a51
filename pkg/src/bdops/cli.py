"""Command-line front end.

Exit codes: 0 all checks passed, 1 at least one check failed,
2 usage or configuration error.
"""
import argparse
import sys
from fractions import Fraction

from . import backend
from .analysis import check_uniform_bound, fit_convergence_order
from .experiments import (
    FIGURE_IDS,
    TABLE_IDS,
    SuiteConfigError,
    emit_figure,
    reproduce_table,
    run_suite,
)
from .functions import from_name
from .moments import (
    MomentReport,
    central_moment_oracle,
    central_moment_tilde2_closed,
    central_moment_tilde3_closed,
    central_moment_u1_closed,
    moment_oracle,
    moment_tilde2_closed,
    moment_u1_closed,
)
from .operators import default_alpha_sequences, modified1, tilde2, tilde3

_MOMENT_FAMILIES = ("u1", "tilde2", "tilde3")


def _cmd_table(args):
    table = reproduce_table(args.id, tolerance=args.tolerance)
    print(f"table {table.table_id} ({table.function}), tolerance {table.tolerance:g}")
    header = f"{'x':>6} {'column':>7} {'computed':>16} {'published':>14} {'|delta|':>10}  status"
    print(header)
    for c in table.cells:
        status = "ok" if c.within_tol else ("FLAGGED" if c.flagged else "FAIL")
        print(f"{c.x:>6} {c.column:>7} {c.computed:>16.10f} {c.published_text:>14} "
              f"{c.abs_delta:>10.2e}  {status}")
        if c.flagged and c.note:
            print(f"{'':>6} {'':>7} note: {c.note}")
    bad = table.failed_cells
    print(f"{len(table.cells)} cells, {len(bad)} beyond tolerance (flagged cells excluded)")
    return 0 if table.ok else 1


def _cmd_figure(args):
    emit_figure(args.id, args.points, args.out, args.format)
    print(f"figure {args.id}: wrote {args.out} ({args.format}, {args.points} points)")
    return 0


def _moment_rows(family, n, x):
    if family == "u1":
        a0 = Fraction(n - 1, 2 * n)
        spec = modified1(n, default_alpha_sequences())
        for k in (0, 1, 2):
            yield MomentReport(family, n, x, k, False,
                               moment_u1_closed(n, a0, k, x), moment_oracle(spec, k, x))
        for k in (1, 2, 4):
            yield MomentReport(family, n, x, k, True,
                               central_moment_u1_closed(n, a0, k, x),
                               central_moment_oracle(spec, k, x))
    elif family == "tilde2":
        spec = tilde2(n)
        for k in (0, 1, 2):
            yield MomentReport(family, n, x, k, False,
                               moment_tilde2_closed(n, k, x), moment_oracle(spec, k, x))
        for k in (2, 3):
            yield MomentReport(family, n, x, k, True,
                               central_moment_tilde2_closed(n, k, x),
                               central_moment_oracle(spec, k, x))
    else:
        spec = tilde3(n)
        for k in (1, 2, 3):
            yield MomentReport(family, n, x, k, True,
                               central_moment_tilde3_closed(n, k, x),
                               central_moment_oracle(spec, k, x))


def _cmd_moments(args):
    x = Fraction(args.x)
    if not 0 <= x <= 1:
        print(f"x = {x} outside [0, 1]", file=sys.stderr)
        return 2
    ok = True
    print(f"family {args.family}, n = {args.n}, x = {x}")
    print(f"{'kind':>8} {'k':>2} {'closed form':>22} {'oracle':>22} {'gap':>10}")
    for r in _moment_rows(args.family, args.n, x):
        kind = "central" if r.central else "moment"
        gap = float(r.abs_gap)
        ok &= r.consistent
        print(f"{kind:>8} {r.order:>2} {float(r.closed_form):>22.15g} "
              f"{float(r.oracle):>22.15g} {gap:>10.2e}")
    print("all consistent" if ok else "INCONSISTENT")
    return 0 if ok else 1


def _cmd_order(args):
    from .experiments import _OPERATORS

    f = from_name(args.function)
    fit = fit_convergence_order(_OPERATORS[args.family], f, args.x, args.n_list,
                                family=args.family)
    print(f"family {args.family}, f = {f.name}, x = {args.x}")
    for n, e in zip(fit.n_values, fit.errors):
        print(f"  n = {n:>5}: error = {e:.6e}")
    print(f"slope = {fit.slope:.4f}, intercept = {fit.intercept:.4f}, "
          f"r^2 = {fit.r_squared:.6f}")
    return 0


def _cmd_bound(args):
    f = from_name(args.function)
    res = check_uniform_bound(default_alpha_sequences(), f, args.n)
    print(f"f = {f.name}, n = {args.n}: max|L_n f - f| = {res.lhs:.8f} "
          f"<= bound {res.rhs:.8f}: {'holds' if res.holds else 'VIOLATED'}")
    return 0 if res.holds else 1


def _cmd_suite(args):
    result = run_suite(args.config)
    payload = result.to_json()
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(payload)
        print(f"wrote {args.out}")
    else:
        print(payload, end="")
    failed = [i for i in result.items if not i["passed"]]
    print(f"{len(result.items)} tasks, {len(failed)} failed", file=sys.stderr)
    return 0 if result.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bdops",
        description="Genuine Bernstein-Durrmeyer operators: error tables, "
                    "moment verification, convergence analysis.",
    )
    parser.add_argument("--backend", choices=backend.available_backends() + ["auto"],
                        default=None, help="kernel backend override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="recompute a published error table")
    p.add_argument("--id", type=int, required=True, choices=TABLE_IDS)
    p.add_argument("--tolerance", type=float, default=5e-7)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("figure", help="emit a figure's data series")
    p.add_argument("--id", type=int, required=True, choices=FIGURE_IDS)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=_cmd_figure)

    p = sub.add_parser("moments", help="closed-form moments vs exact oracle")
    p.add_argument("--family", required=True, choices=_MOMENT_FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True, help="rational, e.g. 1/3 or 0.25")
    p.set_defaults(fn=_cmd_moments)

    p = sub.add_parser("order", help="empirical convergence order")
    p.add_argument("--family", required=True,
                   choices=("classical", "u1", "tilde2", "tilde3"))
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    p.add_argument("--function", default="g3")
    p.set_defaults(fn=_cmd_order)

    p = sub.add_parser("bound", help="uniform modulus-of-continuity bound check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--function", required=True, choices=("g1", "g2", "g3"))
    p.set_defaults(fn=_cmd_bound)

    p = sub.add_parser("suite", help="run a JSON task list")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="write the JSON summary here")
    p.set_defaults(fn=_cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return int(exc.code) if exc.code else 0
    if args.backend:
        backend.set_backend(args.backend)
    try:
        return args.fn(args)
    except SuiteConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
