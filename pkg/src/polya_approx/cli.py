"""Command-line front end: ``polya-approx <command> ...``.

Commands write CSV or JSON (to ``--output`` or stdout). Exit codes: 0 success,
2 bad input, 3 a bound was violated, 4 a degree search ran out of range.
All computation is deterministic; ``POLYA_APPROX_THREADS`` caps the number of
worker threads used for large grids (0 = automatic).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import analysis
from .distribution import PolyaParams, polya_pmf, r_params
from .errors import (
    EvalError,
    InapplicableTheorem,
    MissingDerivative,
    PolyaError,
)
from .fixtures import LABELS, from_samples, get_fixture
from .operators import RationalBernstein, make_operator

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_NOT_REACHED = 0, 2, 3, 4
DEFAULT_GRID = 201
FIGURES = (("fig1", "sin9pi2"), ("fig2", "tent"), ("fig3", "jump"))
FIGURE_DEGREES = (10, 50)


class InputError(Exception):
    """Bad command-line input; reported with exit code 2."""


def fmt(value) -> str:
    """Shortest round-trip decimal for a binary64 value."""
    return repr(float(value))


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _emit(text: str, output: str) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {output}: {exc}") from exc


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise InputError("empty integer list")
    return values


def parse_float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise InputError("empty list")
    return values


def parse_grid(text: str) -> np.ndarray:
    """``"201"`` is an equispaced count including both ends; ``"0,0.5,1"`` is explicit."""
    text = str(text).strip()
    if "," in text or "." in text:
        grid = np.array(parse_float_list(text))
        if np.any(np.diff(grid) < 0) or grid[0] < 0 or grid[-1] > 1:
            raise InputError("explicit grid must be sorted and lie in [0, 1]")
        return grid
    try:
        count = int(text)
    except ValueError:
        raise InputError(f"bad --grid value {text!r}") from None
    if count < 2:
        raise InputError(f"grid count must be >= 2, got {count}")
    return np.linspace(0.0, 1.0, count)


def load_samples(path: str):
    """Two-column CSV ``x,f(x)``; a non-numeric first row is taken as a header."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    xs, ys = [], []
    for i, row in enumerate(rows):
        if len(row) != 2:
            raise InputError(f"{path}: row {i + 1} does not have two columns")
        try:
            x, y = float(row[0]), float(row[1])
        except ValueError:
            if i == 0:
                continue
            raise InputError(f"{path}: row {i + 1} is not numeric") from None
        xs.append(x)
        ys.append(y)
    try:
        return from_samples(xs, ys, Path(path).stem)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _target(args):
    if getattr(args, "data", None):
        return load_samples(args.data)
    if not args.fixture:
        raise InputError("one of --fixture or --data is required")
    try:
        return get_fixture(args.fixture).function
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def _operator(key: str, args):
    params = {}
    if key == "stancu":
        params["alpha"] = args.alpha
    elif key == "q_bernstein":
        params["q"] = args.q
    elif key == "pq_bernstein":
        params["p"], params["q"] = args.p, args.q
    return make_operator(key, **params)


def _check_degrees(ops, degrees):
    for op in ops:
        for n in degrees:
            op.check_degree(n)


# -- commands ------------------------------------------------------------------


def cmd_pmf(args) -> int:
    if args.r_params:
        if args.x is None:
            raise InputError("--r-params needs --x")
        params = r_params(args.x, args.n)
    else:
        if None in (args.a, args.b, args.c):
            raise InputError("give --a, --b and --c, or --r-params --x")
        params = PolyaParams(args.a, args.b, args.c, args.n)
    probs = polya_pmf(params)
    if args.format == "json":
        text = _json_text({
            "a": float(params.a), "b": float(params.b), "c": float(params.c), "n": params.n,
            "p": [float(p) for p in probs],
        })
    else:
        text = _csv_text(("k", "p"), ((k, "%.17g" % p) for k, p in enumerate(probs)))
    _emit(text, args.output)
    return EXIT_OK


def cmd_eval(args) -> int:
    from .operators import evaluate_on_grid

    f = _target(args)
    op = _operator(args.op, args)
    records = evaluate_on_grid(op, f, args.n, parse_grid(args.grid))
    if args.format == "json":
        text = _json_text({
            "operator": op.key, "fixture": f.label, "n": args.n,
            "records": [r._asdict() for r in records],
        })
    else:
        text = _csv_text(("x", op.key, "f", "error"), ([fmt(v) for v in r] for r in records))
    _emit(text, args.output)
    return EXIT_OK


def _comparison(f, ops, n, grid):
    result = analysis.compare_operators(ops, f, n, grid)
    fx = np.atleast_1d(f(grid))
    header = ["x", "f"] + [op.key for op in ops]
    rows = (
        [fmt(x), fmt(fv)] + [fmt(result[op.key]["values"][i]) for op in ops]
        for i, (x, fv) in enumerate(zip(grid, fx))
    )
    summary = {
        op.key: {"sup_error": result[op.key]["sup_error"], "argmax_x": result[op.key]["argmax_x"]}
        for op in ops
    }
    return _csv_text(header, rows), summary


def cmd_compare(args) -> int:
    f = _target(args)
    keys = [k.strip() for k in args.ops.split(",") if k.strip()]
    ops = [_operator(k, args) for k in keys]
    degrees = parse_int_list(args.n)
    _check_degrees(ops, degrees)
    grid = parse_grid(args.grid)

    tables, summaries = {}, []
    for n in degrees:
        tables[n], ops_summary = _comparison(f, ops, n, grid)
        summaries.append({"n": n, "operators": ops_summary})
    summary = {"fixture": f.label, "grid_size": len(grid), "results": summaries}

    if len(degrees) == 1:
        _emit(tables[degrees[0]], args.output)
        summary_path = args.summary
        if summary_path is None and args.output not in (None, "-"):
            summary_path = str(Path(args.output).with_suffix(".summary.json"))
    else:
        if args.output in (None, "-"):
            raise InputError("several degrees need --output DIR")
        outdir = Path(args.output)
        try:
            outdir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise InputError(f"cannot create {outdir}: {exc}") from exc
        for n in degrees:
            _emit(tables[n], str(outdir / f"{f.label}_n{n}.csv"))
        summary_path = args.summary or str(outdir / "summary.json")
    if summary_path is None:
        sys.stderr.write(_json_text(summary))
    else:
        _emit(_json_text(summary), summary_path)
    return EXIT_OK


def cmd_bounds(args) -> int:
    f = _target(args)
    check = {
        "popoviciu": analysis.popoviciu_check,
        "derivative": analysis.derivative_bound_check,
    }[args.theorem]
    degrees = parse_int_list(args.n)
    _check_degrees([RationalBernstein()], degrees)
    grid = parse_grid(args.grid)
    reports = [check(f, n, grid, args.resolution) for n in degrees]
    _emit(_json_text([r.to_dict() for r in reports]), args.output)
    ok = all(r.satisfied and r.flat_satisfied for r in reports)
    return EXIT_OK if ok else EXIT_BOUND


def cmd_voronovskaya(args) -> int:
    f = _target(args)
    n_values = analysis.dyadic(max(args.n_min, 2), args.n_max)
    if not n_values:
        raise InputError("no powers of two in the requested n range")
    samples = [
        analysis.voronovskaya_estimate(f, x, n_values) for x in parse_float_list(args.x)
    ]
    _emit(_json_text([s.to_dict() for s in samples]), args.output)
    return EXIT_OK


def _closed_form_error(op_key: str, label: str, at_x):
    if label != "e2" or op_key not in ("bernstein", "r"):
        raise InputError("--closed-form is available for --fixture e2 with bernstein or r")
    if op_key == "bernstein":
        if at_x is None:
            return analysis.bernstein_e2_sup_error
        return lambda n: at_x * (1 - at_x) / n
    if at_x is None:
        return analysis.r_e2_sup_error
    return lambda n: float(analysis.r_e2_error(at_x, n))


def cmd_mindegree(args) -> int:
    f = _target(args)
    op = _operator(args.op, args)
    grid = parse_grid(args.grid)
    if args.at_x is not None and not 0 <= args.at_x <= 1:
        raise InputError("--at-x must lie in [0, 1]")

    def search(at_x):
        points = grid if at_x is None else [at_x]
        error_fn = _closed_form_error(op.key, f.label, at_x) if args.closed_form else None
        return analysis.min_degree_for_tolerance(
            op, f, args.tol, points, n_max=args.n_max, error_fn=error_fn
        )

    primary = search(args.at_x)
    out = primary.to_dict()
    out["closed_form"] = bool(args.closed_form)
    out["restricted_to_x"] = args.at_x
    if args.at_x is not None:
        full = search(None)
        out["full_grid"] = full.to_dict()
        out["discrepancy"] = full.n_min != primary.n_min
    _emit(_json_text(out), args.output)
    return EXIT_OK if primary.reached else EXIT_NOT_REACHED


def cmd_figures(args) -> int:
    outdir = Path(args.outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InputError(f"cannot create {outdir}: {exc}") from exc
    ops = analysis.comparison_operators()
    grid = np.linspace(0.0, 1.0, DEFAULT_GRID)
    for name, label in FIGURES:
        f = get_fixture(label).function
        for n in FIGURE_DEGREES:
            table, _ = _comparison(f, ops, n, grid)
            _emit(table, str(outdir / f"{name}_n{n}.csv"))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _add_target(p):
    p.add_argument("--fixture", choices=LABELS, help="fixture label")
    p.add_argument("--data", help="two-column CSV of samples (x, f(x)) covering [0, 1]")


def _add_op_params(p):
    p.add_argument("--alpha", type=float, default=0.0, help="Stancu replacement (>= 0)")
    p.add_argument("--q", type=float, default=0.95, help="q for q_bernstein / pq_bernstein")
    p.add_argument("--p", type=float, default=0.99, help="p for pq_bernstein")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polya-approx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmf", help="Polya urn probabilities")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-params", action="store_true", help="use the parameters of R_n at --x")
    p.add_argument("--x", type=float)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("eval", help="one operator on a grid")
    p.add_argument("--op", required=True)
    _add_op_params(p)
    _add_target(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", default=str(DEFAULT_GRID))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="several operators side by side")
    _add_target(p)
    p.add_argument("--ops", default="bernstein,lupas,r,q_bernstein,pq_bernstein")
    _add_op_params(p)
    p.add_argument("--n", required=True, help="degree or comma-separated degrees")
    p.add_argument("--grid", default=str(DEFAULT_GRID))
    p.add_argument("--output", default="-", help="CSV file, or a directory for several degrees")
    p.add_argument("--summary", help="path of the JSON summary")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bounds", help="check the modulus-of-continuity error bounds of R_n")
    p.add_argument("--theorem", choices=("popoviciu", "derivative"), required=True)
    _add_target(p)
    p.add_argument("--n", required=True)
    p.add_argument("--grid", default=str(DEFAULT_GRID))
    p.add_argument("--resolution", type=int, default=2001, help="grid for estimated moduli")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("voronovskaya", help="n (R_n f - f) against its limit")
    _add_target(p)
    p.add_argument("--x", required=True, help="point or comma-separated points")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=16384)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_voronovskaya)

    p = sub.add_parser("mindegree", help="smallest degree reaching a tolerance")
    p.add_argument("--op", required=True)
    _add_op_params(p)
    _add_target(p)
    p.add_argument("--tol", type=float, required=True)
    p.add_argument("--grid", default=str(DEFAULT_GRID))
    p.add_argument("--at-x", type=float, help="measure the error at this point only")
    p.add_argument("--closed-form", action="store_true", help="closed-form error (e2 only)")
    p.add_argument("--n-max", type=int, default=1 << 16)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_mindegree)

    p = sub.add_parser("figures", help="CSV data of the three comparison figures")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) is not None and not getattr(args, "tol", 1.0) > 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except (InputError, PolyaError, EvalError, MissingDerivative, InapplicableTheorem) as exc:
        sys.stderr.write(f"polya-approx {args.command}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
