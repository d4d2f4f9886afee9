"""Command-line interface.

Every subcommand writes CSV (default) or JSON to stdout or ``--out PATH``.
Floats are written with 17 significant digits so values survive a text round
trip bit for bit. Exit status: 0 success, 2 invalid input, 3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from .boundary_solver import GATE, GRID, ShootingError, sr_log
from .cut_locus import CutTimeError, NoCutPointError, cut_point, cut_time, cut_time_profile
from .geodesics import GeodesicParams, geodesic_matrix, geodesic_path
from .hyperbolic_plane import to_semigeodesic
from .lie_core import W0, GroupMembershipError, check_group, is_in_so2

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3

# matrices typed by hand or pasted from other tools carry ~1e-9 noise
CLI_TOL_GROUP = 1e-8

TRAJECTORY_HEADER = [
    "t", "m11", "m12", "m13", "m21", "m22", "m23", "m31", "m32", "m33",
    "px", "py", "pz", "u", "v",
]
CUT_HEADER = ["beta", "regime", "t1", "psi", "area_residual"]
VIOLATION_HEADER = ["index", "beta_left", "beta_right", "t1_left", "t1_right"]
SOLUTION_HEADER = ["distance", "phi0", "beta", "t", "endpoint_error", "multiplicity_hint"]
MATRIX_HEADER = ["m11", "m12", "m13", "m21", "m22", "m23", "m31", "m32", "m33"]


class InputError(ValueError):
    pass


def fmt(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def _records(header, rows):
    return [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]


def csv_text(header, rows, comments=()):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    for line in comments:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def json_text(payload):
    return json.dumps(payload, indent=2) + "\n"


def parse_matrix(text):
    """Nine reals, row-major, separated by whitespace and/or commas."""
    tokens = [tok for tok in re.split(r"[\s,;]+", text.strip()) if tok]
    if len(tokens) != 9:
        raise InputError(f"expected 9 matrix entries, got {len(tokens)}")
    try:
        values = [float(tok) for tok in tokens]
    except ValueError as exc:
        raise InputError(f"bad matrix entry: {exc}") from None
    return np.array(values).reshape(3, 3)


def _positive_int(text):
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("need at least 2")
    return value


def _finite(text):
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not finite")
    return value


def _read_matrix(args):
    text = " ".join(args.matrix) if args.matrix else sys.stdin.read()
    g = parse_matrix(text)
    check_group(g, args.tol_group)
    return g


def trajectory_rows(phi0, beta, t_max, samples):
    ts = np.linspace(0.0, t_max, samples)
    path = geodesic_path(GeodesicParams(phi0, beta), ts)
    rows = []
    for t, g in zip(ts, path):
        p = g @ W0
        c = to_semigeodesic(p)
        rows.append([float(t), *g.ravel().tolist(), *p.tolist(), c.u, c.v])
    return rows


def cmd_geodesic(args):
    if args.t_max <= 0.0:
        raise InputError("t-max must be positive")
    rows = trajectory_rows(args.phi0, args.beta, args.t_max, args.samples)
    if args.format == "json":
        return json_text({"rows": _records(TRAJECTORY_HEADER, rows)})
    return csv_text(TRAJECTORY_HEADER, rows)


def cmd_cuttable(args):
    if not 0.0 < args.beta_min < args.beta_max:
        raise InputError("need 0 < beta-min < beta-max")
    profile = cut_time_profile(args.beta_min, args.beta_max, args.steps)
    rows = [[r.beta, r.regime, r.t1, r.psi, r.area_residual] for r in profile.results]
    violations = [
        [v.index, v.beta_left, v.beta_right, v.t1_left, v.t1_right] for v in profile.violations
    ]
    if args.format == "json":
        return json_text(
            {
                "rows": _records(CUT_HEADER, rows),
                "violations": _records(VIOLATION_HEADER, violations),
            }
        )
    comments = []
    if violations:
        comments.append(f"monotonicity violations: {len(violations)}")
        comments.append(",".join(VIOLATION_HEADER))
        comments.extend(",".join(fmt(v) for v in row) for row in violations)
    return csv_text(CUT_HEADER, rows, comments)


def _solutions(args):
    g = _read_matrix(args)
    sols = sr_log(g, gate=args.gate, grid=args.grid, tol_group=args.tol_group)
    distance = min(s.t for s in sols)
    return distance, sols


def cmd_dist(args):
    distance, sols = _solutions(args)
    rows = [[distance, s.phi0, s.beta, s.t, s.endpoint_error, s.multiplicity_hint] for s in sols]
    if args.format == "json":
        return json_text(
            {"distance": distance, "minimizers": _records(SOLUTION_HEADER[1:], [r[1:] for r in rows])}
        )
    return csv_text(SOLUTION_HEADER, rows)


def cmd_log(args):
    _, sols = _solutions(args)
    header = SOLUTION_HEADER[1:]
    rows = [[s.phi0, s.beta, s.t, s.endpoint_error, s.multiplicity_hint] for s in sols]
    if args.format == "json":
        return json_text({"solutions": _records(header, rows)})
    return csv_text(header, rows)


def cmd_cutpoint(args):
    result = cut_time(args.beta)
    g = cut_point(args.beta, args.phi0)
    flag, angle = is_in_so2(g, args.tol_group)
    header = ["phi0", "beta", "regime", "t1", "in_so2", "angle", *MATRIX_HEADER]
    row = [args.phi0, args.beta, result.regime, result.t1, flag, angle, *g.ravel().tolist()]
    if args.format == "json":
        return json_text(_records(header, [row])[0])
    return csv_text(header, [row])


def cmd_expmap(args):
    if args.t < 0.0:
        raise InputError("t must be non-negative")
    g = geodesic_matrix(GeodesicParams(args.phi0, args.beta), args.t)
    header = ["phi0", "beta", "t", *MATRIX_HEADER]
    row = [args.phi0, args.beta, args.t, *g.ravel().tolist()]
    if args.format == "json":
        return json_text(_records(header, [row])[0])
    return csv_text(header, [row])


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", help="write here instead of stdout")
    common.add_argument("--tol-group", type=_finite, default=CLI_TOL_GROUP)
    common.add_argument("--gate", type=_finite, default=GATE)

    parser = argparse.ArgumentParser(
        prog="so21sr",
        description="Geodesics, cut times and distances of the sub-Riemannian SO0(2,1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geodesic", parents=[common], help="sample a geodesic from the identity")
    p.add_argument("--phi0", type=_finite, default=0.0)
    p.add_argument("--beta", type=_finite, required=True)
    p.add_argument("--t-max", type=_finite, required=True)
    p.add_argument("--samples", type=_positive_int, default=101)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("cuttable", parents=[common], help="tabulate cut times")
    p.add_argument("--beta-min", type=_finite, required=True)
    p.add_argument("--beta-max", type=_finite, required=True)
    p.add_argument("--steps", type=_positive_int, default=50)
    p.set_defaults(func=cmd_cuttable)

    for name, func, text in (
        ("dist", cmd_dist, "distance from the identity"),
        ("log", cmd_log, "shortest geodesics to a target"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("matrix", nargs="*", help="9 entries row-major; stdin if omitted")
        p.add_argument("--grid", type=_positive_int, default=GRID)
        p.set_defaults(func=func)

    p = sub.add_parser("cutpoint", parents=[common], help="cut point of a geodesic")
    p.add_argument("--beta", type=_finite, required=True)
    p.add_argument("--phi0", type=_finite, default=0.0)
    p.set_defaults(func=cmd_cutpoint)

    p = sub.add_parser("expmap", parents=[common], help="endpoint of a geodesic")
    p.add_argument("--phi0", type=_finite, default=0.0)
    p.add_argument("--beta", type=_finite, required=True)
    p.add_argument("--t", type=_finite, required=True)
    p.set_defaults(func=cmd_expmap)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except (InputError, GroupMembershipError, NoCutPointError) as exc:
        print(f"so21sr: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ShootingError, CutTimeError) as exc:
        print(f"so21sr: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"so21sr: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"so21sr: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
