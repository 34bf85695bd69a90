"""Instance, ball and result files.

Instance CSV::

    n=3,m=2
    0.5,1.0,-2.0
    ...

one point per row as ``p0,pbar_1,...,pbar_{n-1}``, written with 17
significant digits so that values round-trip exactly.  Instance JSON is
``{"n": int, "points": [[p0, ...], ...]}``.

Ball CSV has one ball per row as ``r,c_1,...,c_d``; blank lines and lines
starting with ``#`` are skipped.
"""
from __future__ import annotations

import json
import math
import pathlib

import numpy as np

from .errors import DimensionMismatch, ParseError
from .model import DualCertificate, Instance, Point, SolveResult, validate_instance

FORMATS = ("csv", "json")


def _fmt(v: float) -> str:
    return "%.17g" % v


def guess_format(path) -> str:
    suffix = pathlib.Path(path).suffix.lower().lstrip(".")
    return suffix if suffix in FORMATS else "csv"


def _parse_row(text: str, lineno: int) -> list:
    values = []
    for col, field in enumerate(text.split(","), start=1):
        try:
            values.append(float(field))
        except ValueError:
            raise ParseError(f"cannot parse {field.strip()!r} as a number", lineno, col) from None
    return values


def instance_from_csv(text: str) -> Instance:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    header = {}
    for col, item in enumerate(lines[0].split(","), start=1):
        key, sep, value = item.partition("=")
        if not sep or key.strip() not in ("n", "m"):
            raise ParseError("header must look like 'n=<int>,m=<int>'", 1, col)
        try:
            header[key.strip()] = int(value)
        except ValueError:
            raise ParseError(f"bad integer {value.strip()!r} in header", 1, col) from None
    if set(header) != {"n", "m"}:
        raise ParseError("header must define both n and m", 1)
    n, m = header["n"], header["m"]
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        row = _parse_row(line, lineno)
        if len(row) != n:
            raise DimensionMismatch(f"line {lineno}: expected {n} values, got {len(row)}")
        rows.append(row)
    if len(rows) != m:
        raise ParseError(f"header announces m={m} points but file has {len(rows)}", len(lines))
    inst = Instance(n, tuple(Point.from_array(r) for r in rows))
    validate_instance(inst)
    return inst


def instance_to_csv(inst: Instance) -> str:
    out = [f"n={inst.n},m={inst.m}"]
    for p in inst.points:
        out.append(",".join(_fmt(v) for v in p.as_array()))
    return "\n".join(out) + "\n"


def instance_from_json(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno) from None
    if not isinstance(obj, dict) or "n" not in obj or "points" not in obj:
        raise ParseError("expected an object with fields 'n' and 'points'")
    n = int(obj["n"])
    points = []
    for i, row in enumerate(obj["points"]):
        if not isinstance(row, list) or not all(isinstance(v, (int, float)) for v in row):
            raise ParseError(f"point {i} is not a list of numbers")
        if len(row) != n:
            raise DimensionMismatch(f"point {i}: expected {n} values, got {len(row)}")
        points.append(Point.from_array(row))
    inst = Instance(n, tuple(points))
    validate_instance(inst)
    return inst


def instance_to_json(inst: Instance) -> str:
    obj = {"n": inst.n, "points": [[float(v) for v in p.as_array()] for p in inst.points]}
    return json.dumps(obj, indent=1) + "\n"


def read_instance(path, fmt: str = None) -> Instance:
    fmt = fmt or guess_format(path)
    text = pathlib.Path(path).read_text()
    return instance_from_json(text) if fmt == "json" else instance_from_csv(text)


def write_instance(inst: Instance, path, fmt: str = None) -> None:
    fmt = fmt or guess_format(path)
    text = instance_to_json(inst) if fmt == "json" else instance_to_csv(inst)
    pathlib.Path(path).write_text(text)


def balls_from_csv(text: str) -> list:
    """Rows ``r,c_1,...,c_d`` as ``(center, radius)`` pairs."""
    from .balls import Ball

    balls, dim = [], None
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        row = _parse_row(s, lineno)
        if len(row) < 2:
            raise ParseError("a ball needs a radius and at least one coordinate", lineno)
        if dim is None:
            dim = len(row) - 1
        elif len(row) - 1 != dim:
            raise DimensionMismatch(f"line {lineno}: expected {dim} coordinates, got {len(row) - 1}")
        if row[0] < 0 or not all(math.isfinite(v) for v in row):
            raise ParseError("radius must be non-negative and values finite", lineno, 1)
        balls.append(Ball(row[1:], row[0]))
    return balls


def read_balls(path) -> list:
    return balls_from_csv(pathlib.Path(path).read_text())


def result_to_dict(res: SolveResult) -> dict:
    """Field order: x0, xbar, support, dual, stats."""
    return {
        "x0": float(res.x0),
        "xbar": [float(v) for v in res.xbar],
        "support": [int(i) for i in res.support],
        "dual": [float(res.dual.y[i, 0]) for i in res.support],
        "stats": {
            "iterations": res.stats.major_iterations,
            "spair_updates": res.stats.spair_updates,
            "time_s": res.stats.wall_time,
        },
    }


def result_from_dict(obj: dict, inst: Instance):
    """Rebuild ``(x, DualCertificate)`` from a result record.

    Only the support weights ``y_i0`` are stored; each ``ybar_i`` is recovered
    from complementary slackness as ``y_i0 (xbar - pbar_i) / (p_i0 - x0)``.
    """
    try:
        x = Point(obj["x0"], obj["xbar"])
        support = [int(i) for i in obj["support"]]
        weights = [float(v) for v in obj["dual"]]
    except (KeyError, TypeError, ValueError) as err:
        raise ParseError(f"malformed result record: {err}") from None
    if len(support) != len(weights):
        raise ParseError("support and dual have different lengths")
    if x.n != inst.n:
        raise DimensionMismatch(f"result has dimension {x.n}, instance {inst.n}")
    data = inst.data
    y = np.zeros((inst.m, inst.n))
    for i, y0 in zip(support, weights):
        if not 0 <= i < inst.m:
            raise ParseError(f"support index {i} out of range")
        gap = data[i, 0] - x.p0
        y[i, 0] = y0
        if gap > 0:
            y[i, 1:] = y0 * (x.pbar - data[i, 1:]) / gap
    return x, support, DualCertificate(y)


def read_result(path, inst: Instance):
    text = pathlib.Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno) from None
    return result_from_dict(obj, inst)
