"""The one-dimensional curve of boundary-preserving points and its coefficients.

Given a support set ``S = (j1, ..., js)`` (anchor ``j1``) and an entering point
``p*``, the points ``x`` that keep every support point on the boundary of
``x + Q`` while ``xbar`` stays in the affine hull of ``S + {p*}`` satisfy::

    xbar = M (u + x0 v) + alpha* z + pbar_j1
    (alpha*)^2 ||z||^2 + ||M (u + x0 v)||^2 = (p_j1,0 - x0)^2

with ``M`` the anchored difference matrix and ``u, v, w, z`` obtained from its
QR factors.  The dual-feasible branch ``Gamma+`` takes ``alpha* >= 0``.

Internally the anchor height ``a0`` is subtracted out: ``u0 = u + a0 v`` and
``t = x0 - a0``, so that ``u + x0 v = u0 + t v``.  This avoids forming
``||pbar||^2 - p0^2`` differences of large numbers.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from ._num import norm2
from .errors import AffinelyDependent, DegenerateWeights, NoRealPoint
from .model import DualCertificate, Instance, Point, SupportState, as_point
from .qr import QrFactors, difference_matrix, project_residual, solve_normal


@dataclasses.dataclass(frozen=True, eq=False)
class CurveSystem:
    support: tuple
    anchor: int
    p_anchor: Point
    p_star: Point
    M: np.ndarray
    b: np.ndarray
    c: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    z: np.ndarray
    x0_cap: float
    # shifted quantities: u0 = u + a0 v, g0 = M u0, h = M v
    u0: np.ndarray
    g0: np.ndarray
    h: np.ndarray
    znorm: float
    rank_tol: float = 0.0
    disc_tol: float = 0.0

    @property
    def s(self) -> int:
        return len(self.support)

    @property
    def a0(self) -> float:
        return self.p_anchor.p0

    @property
    def affinely_dependent(self) -> bool:
        return self.znorm <= self.rank_tol

    def linear_part(self, x0: float) -> np.ndarray:
        """``u + x0 v`` evaluated in the anchor-shifted form."""
        return self.u0 + (x0 - self.a0) * self.v

    def discriminant(self, x0: float) -> float:
        t = x0 - self.a0
        return t * t - float(np.dot(self.g0 + t * self.h, self.g0 + t * self.h))


def build_curve_system(
    inst: Instance,
    state: SupportState,
    p_star,
    rank_tol: float = 0.0,
    disc_tol: float | None = None,
) -> CurveSystem:
    """Assemble ``M, b, c, u, v, w, z`` for the support in ``state`` and ``p_star``.

    ``state.qr`` must factor the anchored difference matrix of ``state.support``.
    """
    data = inst.data
    support = tuple(state.support)
    return _build(data, support, state.qr, as_point(p_star), rank_tol,
                  disc_tol if disc_tol is not None else 1e-11 * inst.scale**2)


def _build(data, support, qr: QrFactors, p_star: Point, rank_tol, disc_tol) -> CurveSystem:
    heights, spatial = data[:, 0], data[:, 1:]
    j1 = support[0]
    a0, a = heights[j1], spatial[j1]
    M = difference_matrix(spatial, support)
    c = heights[list(support[1:])] - a0
    # b_i = (||pbar_i||^2 - p_i0^2 - ||a||^2 + a0^2) / 2, as stated
    sq = np.einsum("ij,ij->i", spatial[list(support[1:])], spatial[list(support[1:])])
    b = 0.5 * (sq - heights[list(support[1:])] ** 2 - float(np.dot(a, a)) + a0 * a0)
    # b - M^T a == (||d_i||^2 - c_i^2)/2 - a0 c_i, split so a0 stays separate
    half = 0.5 * (np.einsum("ij,ij->j", M, M) - c * c)
    v = solve_normal(qr, c, rank_tol)
    u0 = solve_normal(qr, half, rank_tol)
    u = u0 - a0 * v
    w, z = project_residual(qr, p_star.pbar - a, rank_tol)
    g0 = M @ u0
    h = M @ v
    return CurveSystem(
        support=support,
        anchor=j1,
        p_anchor=Point(a0, a),
        p_star=p_star,
        M=M,
        b=b,
        c=c,
        u=u,
        v=v,
        w=w,
        z=z,
        x0_cap=float(heights[list(support)].min()),
        u0=u0,
        g0=g0,
        h=h,
        znorm=norm2(z),
        rank_tol=rank_tol,
        disc_tol=disc_tol,
    )


def _alpha_star(cs: CurveSystem, x0: float) -> float:
    if cs.affinely_dependent:
        raise AffinelyDependent(f"||z|| = {cs.znorm:.3e}")
    D = cs.discriminant(x0)
    if D < -cs.disc_tol:
        raise NoRealPoint(f"discriminant {D:.3e} < 0 at x0 = {x0!r}")
    return math.sqrt(max(D, 0.0)) / cs.znorm


def gamma_plus(cs: CurveSystem, x0: float) -> np.ndarray:
    """Spatial point of the dual-feasible branch at height ``x0``."""
    astar = _alpha_star(cs, x0)
    t = x0 - cs.a0
    return cs.g0 + t * cs.h + astar * cs.z + cs.p_anchor.pbar


def alphas_of_x0(cs: CurveSystem, x0: float):
    """Affine coefficients ``(alpha*, alpha)`` of ``gamma_plus(cs, x0)``.

    ``alpha`` is ordered like the support (anchor first).  The anchor weight is
    chosen so that ``sum(alpha) + alpha* == 1``.
    """
    astar = _alpha_star(cs, x0)
    tail = cs.linear_part(x0) + astar * cs.w
    return astar, np.concatenate(([1.0 - tail.sum() - astar], tail))


def alphas_affdep(cs: CurveSystem, x0j: float, alpha_star: float) -> np.ndarray:
    """Coefficients of the fixed point ``x^j`` as ``alpha*`` moves weight onto ``p*``."""
    tail = cs.linear_part(x0j) + alpha_star * cs.w
    return np.concatenate(([1.0 - alpha_star - tail.sum()], tail))


def affine_coefficients(inst: Instance, support, qr: QrFactors, xbar) -> np.ndarray:
    """Coefficients of ``xbar`` in the affine hull of the support's spatial parts."""
    spatial = inst.data[:, 1:]
    a = spatial[support[0]]
    if len(support) == 1:
        return np.ones(1)
    w, _ = project_residual(qr, np.asarray(xbar, dtype=float) - a)
    tail = -w
    return np.concatenate(([1.0 - tail.sum()], tail))


def reconstruct_dual(inst: Instance, support, alpha, x, tol: float | None = None) -> DualCertificate:
    """Dual vectors matching the affine weights ``alpha`` of ``xbar`` on ``support``.

    ``y_i0`` is proportional to ``alpha_i (p_i0 - x0)`` and ``ybar_i`` points
    from ``pbar_i`` towards ``xbar``.  When ``x`` coincides with a support
    point the certificate is ``e_1`` at that point.
    """
    x = as_point(x)
    data = inst.data
    m, n = data.shape
    support = list(support)
    alpha = np.asarray(alpha, dtype=float)
    if tol is None:
        tol = 1e-14 * inst.scale
    y = np.zeros((m, n))
    gaps = data[support, 0] - x.p0
    k = int(np.argmin(gaps))
    if gaps[k] <= tol:
        y[support[k], 0] = 1.0
        return DualCertificate(y)
    weights = alpha * gaps
    total = weights.sum()
    if total <= tol:
        raise DegenerateWeights(f"sum of weights {total:.3e} is not positive")
    y0 = weights / total
    y[support, 0] = y0
    y[support, 1:] = (y0 / gaps)[:, None] * (x.pbar - data[support, 1:])
    return DualCertificate(y)
