"""Small numerical helpers: overflow-safe norms and a stable quadratic solver."""
import math

import numpy as np


def norm2(v) -> float:
    """Euclidean norm with max-abs scaling, safe near overflow/underflow."""
    v = np.asarray(v, dtype=float)
    big = np.max(np.abs(v), initial=0.0)
    if big == 0.0 or not math.isfinite(big):
        return float(big)
    s = v / big
    return float(big * math.sqrt(float(np.dot(s.ravel(), s.ravel()))))


def row_norms(a) -> np.ndarray:
    """Row-wise ``norm2`` of a 2-D array."""
    a = np.asarray(a, dtype=float)
    if a.shape[1] == 0:
        return np.zeros(a.shape[0])
    big = np.max(np.abs(a), axis=1)
    safe = np.where(big > 0, big, 1.0)
    s = a / safe[:, None]
    return big * np.sqrt(np.einsum("ij,ij->i", s, s))


def quadratic_roots(a: float, b: float, c: float, rel_tol: float = 1e-12) -> list:
    """Real roots of ``a t^2 + b t + c = 0``.

    Uses the cancellation-free form: the larger-magnitude root first, the other
    from the product of roots.  A discriminant that is negative only by
    rounding (relative to ``b^2 + |4ac|``) is treated as a double root.  Only
    an exactly zero leading coefficient degrades to the linear equation; a tiny
    one just produces a huge first root, while the product form keeps the
    other root accurate.  Comparing ``a`` against ``b`` and ``c`` would not be
    scale invariant, since the three carry different units of ``t``.
    """
    size = max(abs(a), abs(b), abs(c))
    if size == 0.0:
        return []
    a, b, c = a / size, b / size, c / size
    if a == 0.0:
        if b == 0.0:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        if disc >= -rel_tol * (b * b + abs(4.0 * a * c)):
            disc = 0.0
        else:
            return []
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    if q == 0.0:
        return [0.0, 0.0]
    return sorted([q / a, c / q])
