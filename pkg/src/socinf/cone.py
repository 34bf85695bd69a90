"""Second-order cone predicates and the closed-form two-point infimum.

``x <=_Q p`` holds when ``p - x`` lies in the cone ``{(t; v): ||v|| <= t}``,
i.e. ``||pbar - xbar|| <= p0 - x0``.
"""
from __future__ import annotations

import numpy as np

from ._num import norm2
from .errors import DimensionMismatch
from .model import Point, as_point


def _check_dims(x: Point, p: Point):
    if x.pbar.size != p.pbar.size:
        raise DimensionMismatch(f"dimension {x.n} does not match {p.n}")


def infeasibility(x, p) -> float:
    """Signed violation ``||pbar - xbar|| - (p0 - x0)``; positive means violated."""
    x, p = as_point(x), as_point(p)
    _check_dims(x, p)
    return norm2(p.pbar - x.pbar) - (p.p0 - x.p0)


def cone_leq(x, p, eps: float = 0.0, scale: float = 1.0) -> bool:
    """True iff ``x <=_Q p`` up to an absolute slack of ``eps * scale``."""
    return infeasibility(x, p) <= eps * scale


def two_point_solve(p1, p2) -> Point:
    """Exact infimum of ``{p1, p2}``.

    The height is ``min(p10, p20, (p10 + p20 - ||pbar1 - pbar2||) / 2)`` and
    the spatial part is the weighted combination that puts both points on the
    cone boundary.  If both weights vanish the points coincide spatially at the
    optimum and ``pbar1`` is returned.
    """
    p1, p2 = as_point(p1), as_point(p2)
    _check_dims(p1, p2)
    dist = norm2(p1.pbar - p2.pbar)
    # symmetric in (p1, p2) so that swapping the arguments is bit-identical
    s = p1.p0 + p2.p0
    x0 = min(p1.p0, p2.p0, 0.5 * (s - dist))
    w1 = p2.p0 - x0
    w2 = p1.p0 - x0
    denom = w1 + w2
    if denom <= 0.0:
        return Point(x0, p1.pbar.copy())
    if w1 == 0.0:
        return Point(x0, p2.pbar.copy())
    if w2 == 0.0:
        return Point(x0, p1.pbar.copy())
    xbar = (w2 * p2.pbar + w1 * p1.pbar) / denom
    if np.array_equal(p1.pbar, p2.pbar):
        xbar = p1.pbar.copy()
    return Point(x0, xbar)


def two_point_support(p1, p2, x: Point, eps: float = 0.0) -> list:
    """Positions (0 for ``p1``, 1 for ``p2``) that form a support set for ``x``.

    When ``x`` coincides with one of the points only that point supports it;
    otherwise both lie on the boundary and both are needed.
    """
    p1, p2 = as_point(p1), as_point(p2)
    if p1.p0 - x.p0 <= eps and norm2(p1.pbar - x.pbar) <= eps:
        return [0]
    if p2.p0 - x.p0 <= eps and norm2(p2.pbar - x.pbar) <= eps:
        return [1]
    return [0, 1]


def is_point_solution(p_star, S, eps: float = 0.0, scale: float = 1.0) -> bool:
    """True iff ``p_star <=_Q p`` for every ``p`` in ``S`` (vacuous for empty ``S``).

    Only the given set is tested: ``p_star`` is then the infimum of
    ``S + {p_star}``, which says nothing about points outside ``S``.
    """
    p_star = as_point(p_star)
    return all(cone_leq(p_star, p, eps, scale) for p in S)
