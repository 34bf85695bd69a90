"""Independent checks on solver output.

* :func:`kkt_check` verifies primal feasibility, dual feasibility and
  complementary slackness of a primal-dual pair directly.
* :func:`brute_force_meb_points` enumerates candidate support sets of a
  point set (exponential, small inputs only).
* :func:`subgradient_oracle` maximizes ``g(xbar) = min_i (p_i0 - ||pbar_i - xbar||)``,
  whose maximum is the optimal height, by projected supergradient ascent.
  Every value it reports is a lower bound on the optimal ``x0``.
"""
from __future__ import annotations

import dataclasses
import itertools
import math

import numba
import numpy as np

from ._num import norm2, row_norms
from .model import DualCertificate, Instance, Point, as_point


@dataclasses.dataclass(frozen=True)
class KktReport:
    primal: float
    dual_cone: float
    dual_sum: float
    slackness: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.primal, self.dual_cone, self.dual_sum, self.slackness) <= self.tolerance

    def __bool__(self):
        return self.passed


def kkt_check(inst: Instance, x, dual: DualCertificate, eps: float = 1e-7) -> KktReport:
    """Maximum residual of each optimality condition, against ``eps * scale``."""
    x = as_point(x)
    data = inst.data
    y = np.asarray(dual.y if isinstance(dual, DualCertificate) else dual, dtype=float)
    gaps = data - x.as_array()
    primal = float(np.max(row_norms(gaps[:, 1:]) - gaps[:, 0]))
    dual_cone = float(np.max(row_norms(y[:, 1:]) - y[:, 0]))
    e1 = np.zeros(inst.n)
    e1[0] = 1.0
    dual_sum = norm2(y.sum(axis=0) - e1)
    slackness = float(np.max(np.abs(np.einsum("ij,ij->i", gaps, y))))
    return KktReport(primal, dual_cone, dual_sum, slackness, eps * inst.scale)


def _circumcenter(pts: np.ndarray):
    """Center in the affine hull equidistant from all rows, or None if degenerate."""
    base = pts[0]
    if len(pts) == 1:
        return base.copy()
    A = (pts[1:] - base).T
    G = A.T @ A
    if np.linalg.matrix_rank(A, tol=1e-10 * max(1.0, np.abs(A).max())) < A.shape[1]:
        return None
    lam = np.linalg.solve(2.0 * G, np.diag(G))
    return base + A @ lam


def brute_force_meb_points(points, d: int = None):
    """Smallest enclosing ball of points by enumerating subsets of size 1..d+1.

    Returns ``(center, radius)``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    m = len(pts)
    d = pts.shape[1] if d is None else d
    span = max(1.0, float(np.abs(pts).max()))
    best_c, best_r = None, math.inf
    for size in range(1, min(d + 1, m) + 1):
        for idx in itertools.combinations(range(m), size):
            c = _circumcenter(pts[list(idx)])
            if c is None:
                continue
            r = norm2(pts[idx[0]] - c)
            if r >= best_r:
                continue
            if np.all(row_norms(pts - c) <= r + 1e-12 * span):
                best_c, best_r = c, r
    return best_c, best_r


@numba.njit(cache=True)
def _ascent(heights, spatial, x, iters, scale, lo, hi):
    m, k = spatial.shape
    best = -np.inf
    best_x = x.copy()
    g = np.empty(k)
    for t in range(1, iters + 1):
        val = np.inf
        arg = 0
        arg_dist = 0.0
        for i in range(m):
            dist = 0.0
            for j in range(k):
                dj = spatial[i, j] - x[j]
                dist += dj * dj
            dist = math.sqrt(dist)
            f = heights[i] - dist
            if f < val:
                val, arg, arg_dist = f, i, dist
        if val > best:
            best = val
            best_x[:] = x
        if arg_dist == 0.0:
            break
        step = scale / math.sqrt(t)
        for j in range(k):
            g[j] = (spatial[arg, j] - x[j]) / arg_dist
            x[j] = min(max(x[j] + step * g[j], lo[j]), hi[j])
    return best, best_x


def subgradient_oracle(inst: Instance, iters: int = 100_000, seed: int = 0, jitter: float = 0.0):
    """Projected supergradient ascent on ``min_i (p_i0 - ||pbar_i - xbar||)``.

    Starts from the spatial centroid (optionally displaced by ``jitter * scale``
    in a direction drawn from ``seed``), uses step ``scale / sqrt(t)`` along the
    unit supergradient of the first minimizing point, and projects onto the
    bounding box of the spatial parts.

    Returns ``(best_value, Point(best_value, best_xbar))``.
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    data = inst.data
    heights = np.ascontiguousarray(data[:, 0])
    spatial = np.ascontiguousarray(data[:, 1:])
    lo, hi = spatial.min(axis=0), spatial.max(axis=0)
    x = spatial.mean(axis=0)
    if jitter:
        rng = np.random.default_rng(seed)
        x = np.clip(x + jitter * inst.scale * rng.standard_normal(x.size), lo, hi)
    best, best_x = _ascent(heights, spatial, x.copy(), int(iters), float(inst.scale), lo, hi)
    return float(best), Point(best, best_x)


def lower_bound(inst: Instance, xbar) -> float:
    """``g(xbar)``; a lower bound on the optimal height for any ``xbar``."""
    data = inst.data
    return float(np.min(data[:, 0] - row_norms(data[:, 1:] - np.asarray(xbar, dtype=float))))
