"""Command-line entry points.

Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
3 solver failure (including a result that fails verification).
"""
from __future__ import annotations

import argparse
import json
import pathlib
import sys

import numpy as np

from . import balls as _balls
from . import io
from .bench import format_table, generate_normal, rows_to_json, run_bench
from .errors import DimensionMismatch, EmptyInstance, NonFiniteCoordinate, ParseError, SocinfError
from .oracle import brute_force_meb_points, kkt_check, lower_bound, subgradient_oracle
from .solver import PivotRule, SolverConfig, solve

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SOLVER = 0, 1, 2, 3

_INPUT_ERRORS = (ParseError, DimensionMismatch, NonFiniteCoordinate, EmptyInstance, OSError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, output):
    if output:
        pathlib.Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> SolverConfig:
    return SolverConfig(eps_feas=args.eps_feas, pivot_rule=args.pivot, max_iterations=args.max_iters)


def _cmd_solve(args):
    inst = io.read_instance(args.input, args.format)
    res = solve(inst, _config(args))
    _emit(json.dumps(io.result_to_dict(res), indent=1) + "\n", args.output)


def _ball_record(br) -> dict:
    return {
        "mode": br.mode.value,
        "center": [float(v) for v in br.ball.center],
        "radius": float(br.ball.radius),
        "support": list(br.support_indices),
        "iterations": br.solve_result.stats.major_iterations,
    }


def _ball_command(fn):
    def run(args):
        br = fn(io.read_balls(args.input), _config(args))
        _emit(json.dumps(_ball_record(br), indent=1) + "\n", args.output)

    return run


def _cmd_mixed(args):
    enclose = io.read_balls(args.input)
    intersect = io.read_balls(args.intersect)
    br = _balls.min_enclosing_and_intersecting(enclose, intersect, _config(args))
    _emit(json.dumps(_ball_record(br), indent=1) + "\n", args.output)


def _cmd_gen(args):
    inst = generate_normal(args.n, args.m, args.seed)
    fmt = args.format or (io.guess_format(args.output) if args.output else "csv")
    text = io.instance_to_json(inst) if fmt == "json" else io.instance_to_csv(inst)
    _emit(text, args.output)


def _parse_grid(text: str) -> list:
    grid = []
    for item in text.split(","):
        try:
            n, m = (int(v) for v in item.lower().split("x"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"grid entries look like NxM, got {item!r}") from None
        grid.append((n, m))
    return grid


def _cmd_bench(args):
    rows = run_bench(args.grid, args.datasets, args.seed, _config(args), args.workers)
    print(format_table(rows))
    if args.output:
        pathlib.Path(args.output).write_text(rows_to_json(rows) + "\n")
    if any(r.failures or r.kkt_failures for r in rows):
        return EXIT_SOLVER


def _cmd_verify(args):
    inst = io.read_instance(args.input, args.format)
    x, support, dual = io.read_result(args.result, inst)
    report = kkt_check(inst, x, dual, args.eps)
    out = {
        "kkt": {
            "primal": report.primal,
            "dual_cone": report.dual_cone,
            "dual_sum": report.dual_sum,
            "slackness": report.slackness,
            "tolerance": report.tolerance,
            "passed": report.passed,
        },
        "lower_bound_at_xbar": lower_bound(inst, x.pbar),
    }
    ok = report.passed
    if args.oracle_iters > 0:
        best, _ = subgradient_oracle(inst, args.oracle_iters)
        # any xbar gives a lower bound, so the reported x0 may not fall below it
        sg_ok = best <= x.p0 + args.eps * inst.scale
        out["subgradient"] = {"value": best, "gap": x.p0 - best, "passed": bool(sg_ok)}
        ok = ok and sg_ok
    data = inst.data
    if inst.m <= 12 and inst.n <= 4 and np.ptp(data[:, 0]) == 0:
        center, radius = brute_force_meb_points(data[:, 1:])
        bf = float(data[0, 0] - radius)
        bf_ok = abs(bf - x.p0) <= 1e-8 * inst.scale
        out["brute_force"] = {"value": bf, "center": center.tolist(), "passed": bool(bf_ok)}
        ok = ok and bf_ok
    out["passed"] = bool(ok)
    _emit(json.dumps(out, indent=1) + "\n", args.output)
    return EXIT_OK if ok else EXIT_SOLVER


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="socinf", description="Second-order cone infimum solver.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=True):
        p.add_argument("--output", help="write here instead of stdout")
        if fmt:
            p.add_argument("--format", choices=io.FORMATS, help="file format (default: from suffix)")
        p.add_argument("--eps-feas", type=float, default=1e-9)
        p.add_argument("--pivot", choices=[r.value for r in PivotRule], default=PivotRule.MOST_INFEASIBLE.value)
        p.add_argument("--max-iters", type=int, default=None)
        return p

    p = common(sub.add_parser("solve", help="solve an instance file"))
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_solve)

    for name, fn, text in (
        ("meb", _balls.min_enclosing_ball, "smallest ball enclosing the input balls"),
        ("intersect", _balls.min_intersecting_ball, "smallest ball meeting the input balls"),
        ("enclosed", _balls.largest_enclosed_ball, "largest ball inside all input balls"),
    ):
        p = common(sub.add_parser(name, help=text), fmt=False)
        p.add_argument("--input", required=True, help="ball CSV, rows r,c_1,...,c_d")
        p.set_defaults(func=_ball_command(fn))

    p = common(sub.add_parser("mixed", help="enclose one ball set and meet another"), fmt=False)
    p.add_argument("--input", required=True, help="balls to enclose")
    p.add_argument("--intersect", required=True, help="balls to meet")
    p.set_defaults(func=_cmd_mixed)

    p = sub.add_parser("gen", help="random standard-normal instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=io.FORMATS)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_gen)

    p = common(sub.add_parser("bench", help="iteration counts on random instances"), fmt=False)
    p.add_argument("--grid", type=_parse_grid, default=[(10, 100), (10, 1000), (100, 100)],
                   help="comma-separated NxM pairs")
    p.add_argument("--datasets", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="check a solve result against the instance")
    p.add_argument("--input", required=True)
    p.add_argument("--result", required=True)
    p.add_argument("--format", choices=io.FORMATS)
    p.add_argument("--eps", type=float, default=1e-7)
    p.add_argument("--oracle-iters", type=int, default=100_000)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "gen" and (args.n < 2 or args.m < 1):
        print("socinf: error: need --n >= 2 and --m >= 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "eps_feas", 1.0) <= 0:
        print("socinf: error: --eps-feas must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        code = args.func(args)
    except _INPUT_ERRORS as err:
        print(f"socinf: input error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (SocinfError, ArithmeticError) as err:
        print(f"socinf: solver failure: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_SOLVER
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
