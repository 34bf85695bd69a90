"""Updatable QR factorization of the anchored difference matrix.

For a support set ``j1, ..., js`` the matrix ``M`` has columns
``pbar_{j_i} - pbar_{j1}`` for ``i = 2..s``.  The factors are kept in sync
with support edits by Givens rotations instead of refactoring:

* adding a point appends a column;
* removing a non-anchor point deletes a column;
* removing the anchor re-anchors at the next point, which is a column delete
  plus a rank-one correction confined to the first row of ``R``.

Support positions are 0-based throughout; position 0 is the anchor and
position ``k > 0`` owns column ``k - 1``.

All update functions mutate the factors in place and return them.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import qr as _dense_qr
from scipy.linalg import solve_triangular

from .errors import FullSupport, IndexOutOfRange, RankDeficient


class QrFactors:
    """``M = Q R`` with ``Q`` dense orthogonal (k x k) and ``R`` (k x cols)."""

    def __init__(self, Q: np.ndarray, R: np.ndarray):
        self.Q = Q
        self.R = R
        self.updates = 0

    @classmethod
    def empty(cls, rows: int) -> "QrFactors":
        return cls(np.eye(rows), np.zeros((rows, 0)))

    @property
    def rows(self) -> int:
        return self.Q.shape[0]

    @property
    def cols(self) -> int:
        return self.R.shape[1]

    # alias used by the data model
    s_minus_1 = cols

    @property
    def R_tri(self) -> np.ndarray:
        s = self.cols
        return self.R[:s, :s]

    def matrix(self) -> np.ndarray:
        return self.Q @ self.R

    def orthogonality_error(self) -> float:
        k = self.rows
        return float(np.max(np.abs(self.Q.T @ self.Q - np.eye(k)), initial=0.0))

    def reconstruction_error(self, M) -> float:
        return float(np.max(np.abs(self.matrix() - np.asarray(M, dtype=float)), initial=0.0))

    def min_diag(self) -> float:
        if self.cols == 0:
            return math.inf
        return float(np.min(np.abs(np.diag(self.R_tri))))

    def copy(self) -> "QrFactors":
        out = QrFactors(self.Q.copy(), self.R.copy())
        out.updates = self.updates
        return out

    def _rotate(self, i: int, j: int, a: float, b: float, col_from: int) -> None:
        """Rotate rows ``i, j`` of R (from ``col_from`` on) so that ``(a, b) -> (r, 0)``."""
        r = math.hypot(a, b)
        if r == 0.0:
            return
        c, s = a / r, b / r
        Ri = self.R[i, col_from:].copy()
        Rj = self.R[j, col_from:]
        self.R[i, col_from:] = c * Ri + s * Rj
        self.R[j, col_from:] = -s * Ri + c * Rj
        Qi = self.Q[:, i].copy()
        Qj = self.Q[:, j]
        self.Q[:, i] = c * Qi + s * Qj
        self.Q[:, j] = -s * Qi + c * Qj

    def _restore_hessenberg(self, start: int) -> None:
        # R is upper Hessenberg from column ``start`` on
        for j in range(start, self.cols):
            self._rotate(j, j + 1, self.R[j, j], self.R[j + 1, j], j)
            self.R[j + 1, j] = 0.0


def qr_build(M) -> QrFactors:
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    rows, cols = M.shape
    if cols == 0:
        return QrFactors.empty(rows)
    Q, R = _dense_qr(M, mode="full")
    R = np.triu(R)
    return QrFactors(np.ascontiguousarray(Q), np.ascontiguousarray(R))


def qr_append_column(qr: QrFactors, col) -> QrFactors:
    col = np.asarray(col, dtype=float).reshape(-1)
    s, k = qr.cols, qr.rows
    if s >= k:
        raise FullSupport(f"matrix already has {s} columns in dimension {k}")
    t = qr.Q.T @ col
    # zero t below position s, bottom up; existing R rows >= s are zero
    for i in range(k - 1, s, -1):
        a, b = t[i - 1], t[i]
        r = math.hypot(a, b)
        if r == 0.0:
            continue
        c, sn = a / r, b / r
        t[i - 1], t[i] = r, 0.0
        Qi = qr.Q[:, i - 1].copy()
        Qj = qr.Q[:, i]
        qr.Q[:, i - 1] = c * Qi + sn * Qj
        qr.Q[:, i] = -sn * Qi + c * Qj
    t[s + 1:] = 0.0
    qr.R = np.column_stack([qr.R, t])
    qr.updates += 1
    return qr


def qr_remove_column(qr: QrFactors, pos: int) -> QrFactors:
    """Remove support position ``pos`` (0 is the anchor)."""
    s = qr.cols
    if not 0 <= pos <= s:
        raise IndexOutOfRange(f"support position {pos} outside 0..{s}")
    if s == 0:
        raise IndexOutOfRange("cannot remove from a single-point support")
    if pos == 0:
        # new columns are M[:, i] - M[:, 0]; Q^T M[:, 0] = R00 e1, so only row 0 moves
        r00 = qr.R[0, 0]
        R = qr.R[:, 1:].copy()
        R[0, :] -= r00
        qr.R = R
        qr._restore_hessenberg(0)
    else:
        qr.R = np.delete(qr.R, pos - 1, axis=1)
        qr._restore_hessenberg(pos - 1)
    qr.updates += 1
    return qr


def solve_normal(qr: QrFactors, rhs, tol: float = 0.0) -> np.ndarray:
    """Solve ``(M^T M) t = rhs`` as ``R^T y = rhs`` then ``R t = y``."""
    rhs = np.asarray(rhs, dtype=float).reshape(-1)
    if qr.cols == 0:
        return np.zeros(0)
    if qr.min_diag() <= tol:
        raise RankDeficient(f"smallest |R_ii| = {qr.min_diag():.3e} <= {tol:.3e}")
    Rt = qr.R_tri
    y = solve_triangular(Rt, rhs, trans="T", lower=False, check_finite=False)
    return solve_triangular(Rt, y, lower=False, check_finite=False)


def project_residual(qr: QrFactors, d, tol: float = 0.0, need_w: bool = True):
    """Split ``d`` against range(M).

    Returns ``(w, z)`` with ``w = -M^+ d`` and ``z = (I - M M^+) d``; ``z`` is
    formed from the orthogonal complement block of ``Q`` so it is exactly
    orthogonal to range(M) up to the orthogonality of ``Q``.
    """
    d = np.asarray(d, dtype=float).reshape(-1)
    s = qr.cols
    y = qr.Q.T @ d
    z = qr.Q[:, s:] @ y[s:]
    if s == 0:
        return np.zeros(0), z
    if not need_w:
        return None, z
    if qr.min_diag() <= tol:
        raise RankDeficient(f"smallest |R_ii| = {qr.min_diag():.3e} <= {tol:.3e}")
    w = -solve_triangular(qr.R_tri, y[:s], lower=False, check_finite=False)
    return w, z


def difference_matrix(spatial: np.ndarray, support) -> np.ndarray:
    """Anchored differences ``pbar_{j_i} - pbar_{j_1}`` for ``i >= 2`` as columns."""
    support = list(support)
    anchor = spatial[support[0]]
    if len(support) == 1:
        return np.zeros((spatial.shape[1], 0))
    return (spatial[support[1:]] - anchor).T
