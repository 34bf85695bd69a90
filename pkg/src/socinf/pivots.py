"""Exact curve-search steps: partial step, full step, and the affinely dependent drop.

Support positions returned here are 0-based (0 is the anchor).
"""
from __future__ import annotations

import math

import numpy as np

from ._num import quadratic_roots
from .curve import CurveSystem
from .errors import NoNegativeSigma
from .model import as_point

NEG_INF = -math.inf


def _alpha_terms(cs: CurveSystem):
    """Rows ``(A0, B, C)`` with ``alpha_i = A0 + B t + C alpha*`` and ``t = x0 - a0``."""
    A0 = np.concatenate(([1.0 - cs.u0.sum()], cs.u0))
    B = np.concatenate(([-cs.v.sum()], cs.v))
    C = np.concatenate(([-(1.0 + cs.w.sum())], cs.w))
    return A0, B, C


def partial_step(cs: CurveSystem, x0j: float, root_tol: float = 1e-8, x_tol: float = 0.0):
    """Largest ``x0 <= x0j`` at which some support coefficient reaches zero.

    Each ``alpha_i(x0) = A + B x0 + C sqrt(D(x0)) / ||z||`` is a radical
    equation: the root is isolated, both sides squared, and the resulting
    quadratic roots are kept only if they solve the unsquared equation.
    Coefficients that are already (numerically) zero at ``x0j`` yield a
    zero-length step.

    Returns ``(x0_partial, k)``, or ``(-inf, None)`` when no coefficient
    ever vanishes.
    """
    A0, B, C = _alpha_terms(cs)
    delta = cs.a0 - x0j
    # everything below is a function of tau = x0 - x0j (tau <= 0)
    A = A0 - B * delta
    g = cs.g0 - delta * cs.h
    hh = float(np.dot(cs.h, cs.h))
    gh = float(np.dot(g, cs.h))
    d2 = 1.0 - hh
    d1 = -2.0 * (delta + gh)
    d0 = delta * delta - float(np.dot(g, g))
    zz = cs.znorm * cs.znorm

    def D(tau):
        return (d2 * tau + d1) * tau + d0

    def alpha_i(i, tau):
        Dv = D(tau)
        if Dv < -cs.disc_tol:
            return None
        return A[i] + B[i] * tau + C[i] * math.sqrt(max(Dv, 0.0)) / cs.znorm

    best, best_k = NEG_INF, None
    for i in range(cs.s):
        candidates = []
        a_now = alpha_i(i, 0.0)
        if a_now is not None and a_now <= 1e-12:
            candidates.append(0.0)
        k2 = C[i] * C[i] / zz
        qa = k2 * d2 - B[i] * B[i]
        qb = k2 * d1 - 2.0 * A[i] * B[i]
        qc = k2 * d0 - A[i] * A[i]
        for tau in quadratic_roots(qa, qb, qc):
            if not math.isfinite(tau) or tau > x_tol:
                continue
            val = alpha_i(i, tau)
            if val is None:
                continue
            mag = max(1.0, abs(A[i]), abs(B[i] * tau), abs(C[i]) * math.sqrt(max(D(tau), 0.0)) / cs.znorm)
            if abs(val) <= root_tol * mag:
                candidates.append(min(tau, 0.0))
        for tau in candidates:
            if tau > best:
                best, best_k = tau, i
    if best_k is None:
        return NEG_INF, None
    return x0j + best, best_k


def full_step_details(cs: CurveSystem, x0j: float, p_star=None, dual_tol: float = 1e-9, x_tol: float = 0.0):
    """Like :func:`full_step` but also returns ``alpha*`` at the chosen root."""
    p_star = cs.p_star if p_star is None else as_point(p_star)
    a0, a = cs.a0, cs.p_anchor.pbar
    e = p_star.pbar - a
    cstar = p_star.p0 - a0
    ez = float(np.dot(e, cs.z))
    if ez <= 0.0:
        return NEG_INF, None
    # alpha*(t) = gamma0 + gamma1 t, from  e^T xbar = b* + x0 c*
    gamma0 = (0.5 * float(np.dot(e, e)) - 0.5 * cstar * cstar - float(np.dot(e, cs.g0))) / ez
    gamma1 = (cstar - float(np.dot(e, cs.h))) / ez
    q = cs.g0 + gamma0 * cs.z
    r = cs.h + gamma1 * cs.z
    # ||q + t r||^2 = t^2
    roots = quadratic_roots(float(np.dot(r, r)) - 1.0, 2.0 * float(np.dot(q, r)), float(np.dot(q, q)))
    cap = min(x0j, p_star.p0)
    best, best_astar = NEG_INF, None
    for t in roots:
        x0 = a0 + t
        astar = gamma0 + gamma1 * t
        if not math.isfinite(x0) or astar < -dual_tol or x0 > cap + x_tol:
            continue
        if x0 > best:
            best, best_astar = x0, astar
    if best_astar is not None:
        best = min(best, x0j)
    return best, best_astar


def full_step(cs: CurveSystem, x0j: float, p_star=None, dual_tol: float = 1e-9, x_tol: float = 0.0) -> float:
    """Highest ``x0 <= min(x0j, p*_0)`` on the curve where ``p*`` becomes active.

    Returns ``-inf`` when no such point with ``alpha* >= -dual_tol`` exists.
    """
    return full_step_details(cs, x0j, p_star, dual_tol, x_tol)[0]


def affdep_ratio(cs: CurveSystem, x0j: float, sigma_tol: float = 1e-12):
    """Minimum ratio test; returns ``(k, alpha*)``."""
    lin = cs.linear_part(x0j)
    rho = np.concatenate(([1.0 - lin.sum()], lin))
    sigma = np.concatenate(([-1.0 - cs.w.sum()], cs.w))
    best, best_k = math.inf, None
    for k in range(cs.s):
        if sigma[k] < -sigma_tol:
            ratio = -rho[k] / sigma[k]
            if ratio < best:
                best, best_k = ratio, k
    if best_k is None:
        raise NoNegativeSigma(f"no negative entry in sigma = {sigma}")
    return best_k, best


def affdep_drop(cs: CurveSystem, x0j: float, sigma_tol: float = 1e-12) -> int:
    """Support position to drop when ``p*`` lies in the support's affine hull."""
    return affdep_ratio(cs, x0j, sigma_tol)[0]
