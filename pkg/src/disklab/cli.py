"""``disklab`` command line.

Exit codes: 0 success or certified, 2 refuted (NotPreserver or a failing
verification case), 1 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .compose import monomial_matrix
from .config import DEFAULT_GRID, DEFAULT_TOLERANCES, DEFAULT_TRUNCATION
from .descriptors import DescriptorError, describe, parse_action, parse_function, parse_operator
from .disk import BoundaryGrid, RadialLadder
from .handles import boundary_values
from .inner import DEFAULT_MASS_LADDER, frostman_scan
from .jsonio import dumps
from .outer import factorize, smirnov_diagnostic
from .preserver import NOT_PRESERVER, reconstruct
from .suites import SUITES, run_suite

EXIT_OK, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2


class CliError(Exception):
    pass


def _read_descriptor(arg: str):
    """Inline JSON when ``arg`` starts with ``{``, else a file path."""
    text = arg if arg.lstrip().startswith("{") else None
    source = "<inline>"
    if text is None:
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise CliError(f"cannot read {arg}: {exc.strerror}") from None
        source = arg
    try:
        return json.loads(text), source
    except json.JSONDecodeError as exc:
        raise CliError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _parse_points(spec: str) -> np.ndarray:
    """``"0.5, 0.1+0.2j"`` or a JSON list of numbers / ``[re, im]`` pairs."""
    spec = spec.strip()
    try:
        if spec.startswith("["):
            pts = [complex(*p) if isinstance(p, list) else complex(p) for p in json.loads(spec)]
        else:
            pts = [complex(s.strip().replace(" ", "")) for s in spec.split(",") if s.strip()]
    except (ValueError, TypeError, json.JSONDecodeError):
        raise CliError(f"cannot parse points {spec!r}") from None
    if not pts:
        raise CliError("no evaluation points given")
    return np.array(pts, dtype=complex)


def _emit(args, payload, csv_text: str | None = None) -> None:
    if args.format == "csv":
        if csv_text is None:
            raise CliError(f"command {args.command!r} has no CSV output")
        text = csv_text
    else:
        text = dumps(payload) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _tolerances(args):
    try:
        return DEFAULT_TOLERANCES.with_overrides(args.tol or [])
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _ladder(args, default: RadialLadder | None = None):
    if not args.ladder:
        return default
    try:
        return RadialLadder.parse(args.ladder)
    except ValueError as exc:
        raise CliError(f"--ladder: {exc}") from None


def cmd_eval(args) -> int:
    d, _ = _read_descriptor(args.descriptor)
    f = parse_function(d)
    z = _parse_points(args.points)
    rows = []
    for w in z:
        status = "ok"
        if abs(w) > 1.0 + 1e-12:
            rows.append({"z": w, "value": None, "status": "outside-disk"})
            continue
        on_circle = abs(abs(w) - 1.0) <= 1e-9
        try:
            with np.errstate(all="ignore"):
                v = complex(np.asarray(boundary_values(f, np.array([w])))[0])
        except (ValueError, ArithmeticError) as exc:
            rows.append({"z": w, "value": None, "status": f"error: {exc}"})
            continue
        if on_circle:
            status = "boundary" if getattr(f, "boundary", None) is not None else "boundary-sampled"
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            status = "non-finite"
        rows.append({"z": w, "value": v, "status": status})
    table = [["re_z", "im_z", "re_value", "im_value", "status"]]
    for r in rows:
        v = r["value"]
        table.append([r["z"].real, r["z"].imag, v.real if v is not None else "", v.imag if v is not None else "", r["status"]])
    _emit(args, {"descriptor": d, "values": rows}, _csv(table))
    return EXIT_OK


def cmd_factor(args) -> int:
    d, _ = _read_descriptor(args.descriptor)
    f = parse_function(d)
    grid = BoundaryGrid(args.grid or DEFAULT_GRID)
    try:
        fac = factorize(f, grid)
    except ValueError as exc:
        raise CliError(f"factorization failed: {exc}") from None
    smirnov = smirnov_diagnostic(f, _ladder(args, RadialLadder.geometric()), grid, _tolerances(args).tail_percentile)
    payload = {
        "grid": grid.n,
        "outer_at_origin": fac.outer.at_origin(),
        "inner_residual": fac.inner_residual,
        "smirnov_score": smirnov.score,
        "smirnov_growth": smirnov.growth,
        "outer": describe(fac.outer),
    }
    t = grid.angles
    table = [["t", "log_modulus"]] + [[float(a), float(v)] for a, v in zip(t, fac.outer.log_values)]
    _emit(args, payload, _csv(table))
    return EXIT_OK


def cmd_matrix(args) -> int:
    d, _ = _read_descriptor(args.descriptor)
    T = parse_operator(d)
    M = args.trunc or DEFAULT_TRUNCATION
    mat = monomial_matrix(T, args.cols, M)
    payload = {
        "K": args.cols,
        "M": M,
        "tail_mass": list(mat.tail_mass),
        "columns": [[complex(v) for v in mat.coeffs[:, k]] for k in range(args.cols + 1)],
    }
    if args.format is None:
        args.format = "csv"
    _emit(args, payload, mat.to_csv())
    return EXIT_OK


def cmd_analyze(args) -> int:
    d, _ = _read_descriptor(args.action)
    action = parse_action(d)
    grid = BoundaryGrid(args.grid or 1 << 12)
    report = reconstruct(action, _tolerances(args), grid)
    out = report.to_dict()
    out["K"] = action.K
    table = [["k", "innerness_residual"]] + [[k, float(v)] for k, v in enumerate(report.innerness_residuals)]
    _emit(args, out, _csv(table))
    return EXIT_REFUTED if report.classification == NOT_PRESERVER else EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise CliError(f"unknown suite {args.suite!r}; available suites: {', '.join(SUITES)}")
    try:
        rep = run_suite(
            args.suite,
            seed=args.seed,
            grid=args.grid,
            ladder=_ladder(args),
            trunc=args.trunc,
            tol=_tolerances(args),
            norm=args.norm,
            n_max=args.nmax,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.format is None and rep.csv is not None:
        args.format = "csv"
    if args.format == "csv" and rep.csv is None:
        rows = [["case", "passed"]] + [[c.name, c.passed] for c in rep.cases]
        rep.csv = _csv(rows)
    _emit(args, rep.to_dict(), rep.csv)
    return EXIT_OK if rep.passed else EXIT_REFUTED


def cmd_scan_frostman(args) -> int:
    d, _ = _read_descriptor(args.descriptor)
    h = parse_function(d)
    a_grid = _parse_points(args.a)
    if np.any(np.abs(a_grid) >= 1):
        raise CliError("Frostman parameters must lie in the open disk")
    tol = _tolerances(args)
    entries = frostman_scan(
        h, a_grid, _ladder(args, DEFAULT_MASS_LADDER), BoundaryGrid(args.grid or 1 << 14), tol.frostman
    )
    payload = {
        "threshold": tol.frostman,
        "entries": [{"a": e.a, "estimate": e.estimate, "reliable": e.reliable, "flagged": e.flagged} for e in entries],
    }
    table = [["re_a", "im_a", "estimate", "reliable", "flagged"]]
    table += [[e.a.real, e.a.imag, e.estimate, e.reliable, e.flagged] for e in entries]
    _emit(args, payload, _csv(table))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, help="boundary grid size n")
    common.add_argument("--ladder", help='radial ladder, e.g. "1-2^-k:1..20" or "0.9,0.99,0.999"')
    common.add_argument("--trunc", type=int, help=f"Taylor truncation order (default {DEFAULT_TRUNCATION})")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance (repeatable)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites (default 0)")
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), help="output format (default json)")

    p = argparse.ArgumentParser(prog="disklab", description="Function theory on the unit disk.")
    p.add_argument("--version", action="version", version=f"disklab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a function descriptor")
    s.add_argument("descriptor", help="descriptor file or inline JSON")
    s.add_argument("--points", required=True, help='points, e.g. "0.5,0.1+0.2j" or "[[0.5,0]]"')
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("factor", parents=[common], help="inner-outer factorization of a sampled function")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("matrix", parents=[common], help="monomial matrix of a weighted composition operator (CSV)")
    s.add_argument("descriptor", help='{"type": "wco", ...}')
    s.add_argument("--cols", type=int, default=8, help="highest monomial degree K (default 8)")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("analyze", parents=[common], help="classify a monomial action")
    s.add_argument("action", help='{"type": "action", "entries": [...]}')
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("verify", parents=[common], help=f"run a verification suite ({', '.join(SUITES)})")
    s.add_argument("suite")
    s.add_argument("--norm", help="axioms suite: h2, hp:4, dirichlet, a2, ...")
    s.add_argument("--nmax", type=int, default=200, help="axioms suite: largest n (default 200)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan-frostman", parents=[common], help="singular mass of phi_a o h over sampled a")
    s.add_argument("descriptor")
    s.add_argument("--a", default="0,0.3,0.5,0.7j,-0.4", help="parameters a in the disk")
    s.set_defaults(func=cmd_scan_frostman)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK
    except (CliError, DescriptorError) as exc:
        print(f"disklab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, ArithmeticError, TypeError) as exc:
        print(f"disklab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
