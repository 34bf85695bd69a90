"""Dual simplex-type solver for the infimum of a point set w.r.t. the second-order cone.

Every major iteration starts from a dual feasible S-pair ``(S, x)``: all
support points on the boundary of ``x + Q``, ``xbar`` in the relative
interior of their spatial hull, spatial parts affinely independent.  A
violated point ``p*`` is chosen and a sequence of exact curve searches moves
``x`` down until ``p*`` becomes active, dropping support points whose dual
weight reaches zero on the way.
"""
from __future__ import annotations

import dataclasses
import enum
import logging
import math
import time
from typing import Callable, Optional

import numpy as np

from ._num import norm2, row_norms
from .cone import is_point_solution, two_point_solve, two_point_support
from .curve import (
    CurveSystem,
    _build,
    affine_coefficients,
    gamma_plus,
    reconstruct_dual,
)
from .errors import (
    AffinelyDependent,
    DegenerateWeights,
    EmptyInstance,
    IterationLimit,
    NoNegativeSigma,
    NoRealPoint,
    NumericalBreakdown,
    RankDeficient,
)
from .model import (
    Instance,
    Point,
    SolveResult,
    SolveStats,
    SupportState,
    as_point,
    validate_instance,
)
from .pivots import NEG_INF, affdep_drop, full_step, partial_step
from .qr import QrFactors, difference_matrix, qr_append_column, qr_build, qr_remove_column

logger = logging.getLogger(__name__)

_RECOVERABLE = (NumericalBreakdown, RankDeficient, AffinelyDependent, NoRealPoint,
                NoNegativeSigma, DegenerateWeights)


class PivotRule(enum.Enum):
    MOST_INFEASIBLE = "most-infeasible"
    FIRST_VIOLATED = "first"


@dataclasses.dataclass
class SolverConfig:
    """Tolerances are relative; absolute values are ``eps * instance.scale``."""

    eps_feas: float = 1e-9
    eps_dual: float = 1e-9
    eps_rank: float = 1e-12
    max_iterations: Optional[int] = None
    pivot_rule: PivotRule = PivotRule.MOST_INFEASIBLE
    use_two_point_shortcut: bool = True
    refactor_every: int = 64
    refactor_residual: float = 1e-8
    eps_disc: float = 1e-11
    eps_root: float = 1e-8
    breakdown_tol: float = 1e-7

    def __post_init__(self):
        if isinstance(self.pivot_rule, str):
            self.pivot_rule = PivotRule(self.pivot_rule)
        for name in ("eps_feas", "eps_dual", "eps_rank"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def iteration_limit(self, m: int) -> int:
        return self.max_iterations if self.max_iterations is not None else 100 * m + 1000


def initial_spair(inst: Instance) -> SupportState:
    """Singleton S-pair at the lowest point (smallest index on ties)."""
    if inst.m == 0:
        raise EmptyInstance("instance has no points")
    data = inst.data
    k = int(np.argmin(data[:, 0]))
    return SupportState([k], Point.from_array(data[k]), QrFactors.empty(inst.n - 1))


def violations(inst: Instance, x) -> np.ndarray:
    """``infeasibility(x, p_i)`` for every point, vectorised."""
    x = as_point(x)
    data = inst.data
    return row_norms(data[:, 1:] - x.pbar) - (data[:, 0] - x.p0)


def select_violated(inst: Instance, x, cfg: SolverConfig = None, exclude=()) -> Optional[int]:
    cfg = cfg or SolverConfig()
    viol = violations(inst, x)
    if len(exclude):
        viol[list(exclude)] = -math.inf
    tol = cfg.eps_feas * inst.scale
    if cfg.pivot_rule is PivotRule.FIRST_VIOLATED:
        hits = np.flatnonzero(viol > tol)
        return int(hits[0]) if hits.size else None
    k = int(np.argmax(viol))
    return k if viol[k] > tol else None


@dataclasses.dataclass
class SpairReport:
    boundary: float
    min_alpha: float
    min_diag: float
    size: int

    def ok(self, boundary_tol: float, alpha_tol: float = 1e-10, rank_tol: float = 0.0) -> bool:
        return (self.boundary <= boundary_tol and self.min_alpha >= alpha_tol
                and self.min_diag > rank_tol)


def check_spair(inst: Instance, support, x, qr: QrFactors = None) -> SpairReport:
    """Residuals of the three dual-feasible S-pair conditions.

    ``boundary`` is the largest ``| ||pbar_i - xbar|| - (p_i0 - x0) |`` over the
    support, ``min_alpha`` the smallest affine coefficient of ``xbar`` and
    ``min_diag`` the smallest ``|R_ii|`` of a fresh factorization.
    """
    x = as_point(x)
    support = list(support)
    data = inst.data
    sub = data[support]
    boundary = float(np.max(np.abs(row_norms(sub[:, 1:] - x.pbar) - (sub[:, 0] - x.p0))))
    fresh = qr_build(difference_matrix(data[:, 1:], support))
    try:
        alpha = affine_coefficients(inst, support, fresh, x.pbar)
        min_alpha = float(alpha.min())
    except RankDeficient:
        min_alpha = -math.inf
    return SpairReport(boundary, min_alpha, fresh.min_diag(), len(support))


def spair_from(inst: Instance, support, x, cfg: SolverConfig = None) -> SupportState:
    """Validate a caller-supplied S-pair for warm starting."""
    cfg = cfg or SolverConfig()
    validate_instance(inst)
    support = [int(i) for i in support]
    x = as_point(x)
    if not support or len(set(support)) != len(support) or len(support) > inst.n:
        raise ValueError("support must be 1..n distinct indices")
    rep = check_spair(inst, support, x)
    scale = inst.scale
    if not rep.ok(cfg.breakdown_tol * scale, 0.0, cfg.eps_rank * scale):
        raise ValueError(f"not a dual feasible S-pair: {rep}")
    return SupportState(support, x, qr_build(difference_matrix(inst.data[:, 1:], support)))


class _Run:
    """State for one solve; not shared between threads."""

    def __init__(self, inst: Instance, cfg: SolverConfig, state: SupportState, callback):
        self.inst = inst
        self.cfg = cfg
        self.data = inst.data
        self.heights = self.data[:, 0]
        self.spatial = self.data[:, 1:]
        self.scale = inst.scale
        self.state = state
        self.stats = SolveStats()
        self.callback = callback
        self.rank_tol = cfg.eps_rank * self.scale
        self.disc_tol = cfg.eps_disc * self.scale ** 2
        self.x_tol = 1e-12 * self.scale

    # ---- support bookkeeping -------------------------------------------------
    def _set_support(self, support, x: Point):
        self.state.support = list(support)
        self.state.x = x
        self.state.qr = qr_build(difference_matrix(self.spatial, self.state.support))
        self._track()

    def _append(self, k: int):
        col = self.spatial[k] - self.spatial[self.state.support[0]]
        qr_append_column(self.state.qr, col)
        self.state.support.append(k)
        self._maybe_refactor()
        self._track()

    def _remove(self, pos: int):
        qr_remove_column(self.state.qr, pos)
        del self.state.support[pos]
        self._maybe_refactor()

    def _track(self):
        self.stats.max_support = max(self.stats.max_support, len(self.state.support))
        if len(self.state.support) > self.inst.n:
            raise NumericalBreakdown("support larger than n", {"support": list(self.state.support)})

    def _refactor(self):
        self.state.qr = qr_build(difference_matrix(self.spatial, self.state.support))
        self.stats.refactorizations += 1

    def _maybe_refactor(self):
        qr = self.state.qr
        if qr.updates >= self.cfg.refactor_every:
            self._refactor()
        elif qr.updates % 16 == 0 and qr.cols:
            M = difference_matrix(self.spatial, self.state.support)
            if qr.reconstruction_error(M) > self.cfg.refactor_residual * self.scale:
                self._refactor()

    def _curve(self, k: int) -> CurveSystem:
        return _build(self.data, tuple(self.state.support), self.state.qr,
                      Point.from_array(self.data[k]), self.rank_tol, self.disc_tol)

    # ---- main loop -----------------------------------------------------------
    def run(self) -> SolveResult:
        t_start = time.perf_counter()
        limit = self.cfg.iteration_limit(self.inst.m)
        self.stats.x0_history.append(self.state.x.p0)
        self._track()
        while True:
            k = select_violated(self.inst, self.state.x, self.cfg, exclude=self.state.support)
            if k is None:
                break
            if self.stats.major_iterations >= limit:
                self.stats.wall_time = time.perf_counter() - t_start
                raise IterationLimit(f"no convergence after {limit} iterations",
                                     state=self.state, stats=self.stats)
            self._major_with_recovery(k)
            self.stats.x0_history.append(self.state.x.p0)
            if self.callback is not None:
                self.callback(self.state, self.stats)
        result = self._result()
        self.stats.wall_time = time.perf_counter() - t_start
        return result

    def _major_with_recovery(self, k: int):
        saved = (list(self.state.support), self.state.x, self.state.qr.copy())
        try:
            self._major(k)
            return
        except _RECOVERABLE as err:
            first = err
        logger.debug("recovering from %r", first)
        self.state.support, self.state.x, _ = list(saved[0]), saved[1], saved[2]
        self._refactor()
        rep = check_spair(self.inst, self.state.support, self.state.x)
        if not rep.ok(self.cfg.breakdown_tol * self.scale, -self.cfg.eps_dual, self.rank_tol):
            raise NumericalBreakdown(f"S-pair invalid before iteration: {first}",
                                     {"report": rep, "support": list(self.state.support)})
        try:
            self._major(k)
        except _RECOVERABLE as err:
            raise NumericalBreakdown(
                f"curve search failed after refactorization: {err}",
                {"support": list(self.state.support), "x": self.state.x, "entering": k,
                 "first_error": repr(first)},
            ) from err

    def _major(self, k: int):
        cfg, stats = self.cfg, self.stats
        p_star = self.data[k]
        support = self.state.support

        if is_point_solution(p_star, self.data[support], cfg.eps_feas, self.scale):
            self._set_support([k], Point.from_array(p_star))
            stats.major_iterations += 1
            stats.spair_updates += 1
            return

        if len(support) == 1 and cfg.use_two_point_shortcut:
            self._two_point(k)
            stats.major_iterations += 1
            stats.spair_updates += 1
            return

        cs = self._curve(k)
        if cs.affinely_dependent:
            pos = affdep_drop(cs, self.state.x.p0)
            self._remove(pos)
            stats.affdep_drops += 1
            cs = self._curve(k)
            if cs.affinely_dependent:
                raise NumericalBreakdown("still affinely dependent after ratio-test drop",
                                         {"znorm": cs.znorm})

        while True:
            stats.spair_updates += 1
            x0j = self.state.x.p0
            if len(self.state.support) == 1 and cfg.use_two_point_shortcut:
                self._two_point(k)
                stats.major_iterations += 1
                return
            x0p, kp = partial_step(cs, x0j, cfg.eps_root, self.x_tol)
            x0f = full_step(cs, x0j, None, cfg.eps_dual, self.x_tol)
            if x0p == NEG_INF and x0f == NEG_INF:
                raise NumericalBreakdown("curve search found neither a partial nor a full step",
                                         {"x0": x0j, "support": list(self.state.support)})
            if x0p >= x0f:
                if len(self.state.support) == 1:
                    # only reachable without the shortcut: p* solves the pair
                    if is_point_solution(p_star, self.data[self.state.support], cfg.eps_feas, self.scale):
                        self._set_support([k], Point.from_array(p_star))
                        stats.major_iterations += 1
                        return
                    raise NumericalBreakdown("partial step would empty the support", {"x0": x0j})
                self.state.x = Point(x0p, gamma_plus(cs, x0p))
                self._remove(kp)
                stats.partial_steps += 1
                cs = self._curve(k)
                if cs.affinely_dependent:
                    raise NumericalBreakdown("affine dependence after a partial step",
                                             {"znorm": cs.znorm})
            else:
                self.state.x = Point(x0f, gamma_plus(cs, x0f))
                self._append(k)
                stats.major_iterations += 1
                self._check_boundary()
                return

    def _two_point(self, k: int):
        j = self.state.support[0]
        x = two_point_solve(self.data[j], self.data[k])
        keep = two_point_support(self.data[j], self.data[k], x, 1e-14 * self.scale)
        self._set_support([(j, k)[i] for i in keep], x)

    def _check_boundary(self):
        sub = self.data[self.state.support]
        x = self.state.x
        res = np.abs(row_norms(sub[:, 1:] - x.pbar) - (sub[:, 0] - x.p0))
        worst = float(res.max())
        if worst > self.cfg.breakdown_tol * self.scale:
            raise NumericalBreakdown(f"boundary residual {worst:.3e} after full step",
                                     {"support": list(self.state.support)})

    def _result(self) -> SolveResult:
        support = list(self.state.support)
        x = self.state.x
        try:
            alpha = affine_coefficients(self.inst, support, self.state.qr, x.pbar)
        except RankDeficient:
            self._refactor()
            alpha = affine_coefficients(self.inst, support, self.state.qr, x.pbar)
        dual = reconstruct_dual(self.inst, support, alpha, x)
        return SolveResult(x_star=x, support=tuple(support), dual=dual, stats=self.stats)


def solve(
    inst: Instance,
    cfg: SolverConfig = None,
    start: SupportState = None,
    callback: Callable = None,
) -> SolveResult:
    """Solve ``max x0  s.t.  x <=_Q p_i`` for every point of ``inst``.

    Parameters
    ----------
    inst : Instance
    cfg : SolverConfig, optional
    start : SupportState, optional
        Warm start from a validated S-pair (see :func:`spair_from`); defaults
        to the lowest point.
    callback : callable, optional
        Called as ``callback(state, stats)`` after every major iteration.

    Raises
    ------
    IterationLimit, NumericalBreakdown
    """
    cfg = cfg or SolverConfig()
    validate_instance(inst)
    state = start if start is not None else initial_spair(inst)
    return _Run(inst, cfg, state, callback).run()
