"""Ball problems solved through the cone infimum.

A ball ``B(c, r)`` is lifted to ``(-r; c)`` when it must be enclosed and to
``(r; c)`` when it must be met.  For the optimum ``x*`` of the lifted point
set, ``B(xbar*, -x0*)`` is the answer; a positive ``x0*`` on intersection
data means the balls share interior and ``B(xbar*, x0*)`` is the largest ball
inside all of them.
"""
from __future__ import annotations

import dataclasses
import enum
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyInstance, EmptyIntersection, NonFiniteCoordinate
from .model import Instance, SolveResult
from .solver import SolverConfig, solve


@dataclasses.dataclass(frozen=True, eq=False)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.array(self.center, dtype=float).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))
        if not (np.all(np.isfinite(c)) and np.isfinite(self.radius)):
            raise NonFiniteCoordinate("ball has a non-finite coordinate")
        if self.radius < 0:
            raise ValueError(f"negative radius {self.radius}")

    @property
    def dim(self) -> int:
        return self.center.size

    def __repr__(self):
        return f"Ball(center={self.center.tolist()}, radius={self.radius:.6g})"


class BallMode(enum.Enum):
    ENCLOSING = "enclosing"
    INTERSECTING = "intersecting"
    ENCLOSED = "enclosed"
    MIXED = "mixed"


@dataclasses.dataclass(frozen=True, eq=False)
class BallResult:
    ball: Ball
    support_indices: tuple
    mode: BallMode
    solve_result: SolveResult = None


def _as_balls(balls) -> list:
    out = []
    for b in balls:
        if isinstance(b, Ball):
            out.append(b)
        else:
            center, radius = b
            out.append(Ball(center, radius))
    return out


def lift(enclose: Sequence = (), intersect: Sequence = ()) -> Instance:
    """Lifted instance: enclosed balls first, then intersected balls."""
    balls = _as_balls(enclose) + _as_balls(intersect)
    if not balls:
        raise EmptyInstance("no balls given")
    d = balls[0].dim
    if any(b.dim != d for b in balls):
        raise DimensionMismatch("balls have different dimensions")
    n_enc = len(_as_balls(enclose))
    heights = [(-b.radius if i < n_enc else b.radius) for i, b in enumerate(balls)]
    return Instance.from_parts(heights, np.array([b.center for b in balls]).reshape(len(balls), d))


def _run(inst: Instance, cfg):
    res = solve(inst, cfg or SolverConfig())
    return res, tuple(sorted(res.support))


def min_enclosing_ball(balls, cfg: SolverConfig = None) -> BallResult:
    """Smallest ball containing every input ball."""
    res, sup = _run(lift(enclose=balls), cfg)
    return BallResult(Ball(res.xbar, max(-res.x0, 0.0)), sup, BallMode.ENCLOSING, res)


def min_intersecting_ball(balls, cfg: SolverConfig = None) -> BallResult:
    """Smallest ball meeting every input ball.

    If the balls have a common interior point the lifted optimum is positive
    and the largest enclosed ball is returned instead, tagged ``ENCLOSED``.
    """
    res, sup = _run(lift(intersect=balls), cfg)
    if res.x0 > 0:
        return BallResult(Ball(res.xbar, res.x0), sup, BallMode.ENCLOSED, res)
    return BallResult(Ball(res.xbar, -res.x0), sup, BallMode.INTERSECTING, res)


def largest_enclosed_ball(balls, cfg: SolverConfig = None) -> BallResult:
    """Largest ball inside the intersection of the input balls."""
    res, sup = _run(lift(intersect=balls), cfg)
    if res.x0 <= 0:
        raise EmptyIntersection(f"balls have no common interior (optimal height {res.x0:.6g})")
    return BallResult(Ball(res.xbar, res.x0), sup, BallMode.ENCLOSED, res)


def min_enclosing_and_intersecting(enclose, intersect, cfg: SolverConfig = None) -> BallResult:
    """Smallest ball that contains every ball of ``enclose`` and meets every ball of ``intersect``.

    Support indices refer to the concatenation ``enclose + intersect``.
    """
    if not len(enclose):
        return min_intersecting_ball(intersect, cfg)
    res, sup = _run(lift(enclose, intersect), cfg)
    return BallResult(Ball(res.xbar, max(-res.x0, 0.0)), sup, BallMode.MIXED, res)
