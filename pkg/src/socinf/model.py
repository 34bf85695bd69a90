"""Problem data model: lifted points, instances, certificates and solver records.

A lifted point ``p = (p0; pbar)`` lives in R^n.  ``p0`` is the height and
``pbar`` the spatial part of length n-1.  An :class:`Instance` is an ordered
collection of such points; the solver reports support sets as positions into
that collection.
"""
from __future__ import annotations

import dataclasses
import functools
import math
from typing import TYPE_CHECKING, Sequence

import numpy as np

from ._num import norm2
from .errors import DimensionMismatch, EmptyInstance, NonFiniteCoordinate

if TYPE_CHECKING:
    from .qr import QrFactors


@dataclasses.dataclass(frozen=True, eq=False)
class Point:
    p0: float
    pbar: np.ndarray

    def __post_init__(self):
        pbar = np.array(self.pbar, dtype=float).reshape(-1)
        pbar.setflags(write=False)
        object.__setattr__(self, "p0", float(self.p0))
        object.__setattr__(self, "pbar", pbar)

    @classmethod
    def from_array(cls, a) -> "Point":
        a = np.asarray(a, dtype=float).reshape(-1)
        return cls(a[0], a[1:])

    @property
    def n(self) -> int:
        return self.pbar.size + 1

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.p0], self.pbar))

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.p0 == other.p0 and np.array_equal(self.pbar, other.pbar)

    def __repr__(self):
        coords = ", ".join(f"{c:.6g}" for c in self.pbar)
        return f"Point({self.p0:.6g}; {coords})"


@dataclasses.dataclass(frozen=True, eq=False)
class Instance:
    """``m`` lifted points in R^n.

    Construction is lenient so that malformed input can be reported by
    :func:`validate_instance`; the dense ``data`` view is only available for
    consistent instances.
    """

    n: int
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "points", tuple(self.points))

    @classmethod
    def from_array(cls, data) -> "Instance":
        data = np.asarray(data, dtype=float)
        if data.ndim != 2:
            raise DimensionMismatch(f"expected an (m, n) array, got shape {data.shape}")
        return cls(data.shape[1], tuple(Point.from_array(row) for row in data))

    @classmethod
    def from_parts(cls, heights, spatial) -> "Instance":
        heights = np.asarray(heights, dtype=float).reshape(-1)
        spatial = np.asarray(spatial, dtype=float)
        if spatial.ndim == 1:
            spatial = spatial[:, None]
        return cls.from_array(np.column_stack([heights, spatial]))

    @property
    def m(self) -> int:
        return len(self.points)

    @functools.cached_property
    def data(self) -> np.ndarray:
        """Read-only ``(m, n)`` array, heights in column 0."""
        validate_instance(self)
        out = np.array([p.as_array() for p in self.points], dtype=float)
        out.setflags(write=False)
        return out

    @functools.cached_property
    def scale(self) -> float:
        """``max(1, max_i ||p_i||)``; every absolute tolerance is multiplied by it."""
        norms = np.array([np.hypot(abs(p.p0), norm2(p.pbar)) for p in self.points])
        return float(max(1.0, norms.max(initial=0.0)))

    def __len__(self):
        return self.m

    def __getitem__(self, i) -> Point:
        return self.points[i]


def validate_instance(inst: Instance) -> None:
    if inst.m == 0:
        raise EmptyInstance("instance has no points")
    if inst.n < 2:
        raise DimensionMismatch(f"cone dimension must be at least 2, got n={inst.n}")
    for i, p in enumerate(inst.points):
        if p.pbar.size != inst.n - 1:
            raise DimensionMismatch(
                f"point {i} has spatial length {p.pbar.size}, expected {inst.n - 1}"
            )
        if not (math.isfinite(p.p0) and np.all(np.isfinite(p.pbar))):
            raise NonFiniteCoordinate(f"point {i} has a non-finite coordinate")


@dataclasses.dataclass(frozen=True, eq=False)
class DualCertificate:
    """Dual vectors ``y_i = (y_i0; ybar_i)``, one row per instance point."""

    y: np.ndarray

    def __post_init__(self):
        y = np.array(self.y, dtype=float)
        y.setflags(write=False)
        object.__setattr__(self, "y", y)

    @classmethod
    def zeros(cls, m: int, n: int) -> "DualCertificate":
        return cls(np.zeros((m, n)))

    @property
    def weights(self) -> np.ndarray:
        return self.y[:, 0]

    def sum(self) -> np.ndarray:
        return self.y.sum(axis=0)


@dataclasses.dataclass
class SolveStats:
    major_iterations: int = 0
    spair_updates: int = 0
    partial_steps: int = 0
    affdep_drops: int = 0
    wall_time: float = 0.0
    refactorizations: int = 0
    max_support: int = 0
    x0_history: list = dataclasses.field(default_factory=list)


@dataclasses.dataclass(frozen=True, eq=False)
class SolveResult:
    x_star: Point
    support: tuple
    dual: DualCertificate
    stats: SolveStats

    @property
    def x0(self) -> float:
        return self.x_star.p0

    @property
    def xbar(self) -> np.ndarray:
        return self.x_star.pbar


@dataclasses.dataclass
class SupportState:
    """Mutable working state of one solve: support positions, iterate, live QR."""

    support: list
    x: Point
    qr: "QrFactors"

    @property
    def anchor(self) -> int:
        return self.support[0]

    def __len__(self):
        return len(self.support)


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    return Point.from_array(p)


def stack_points(points: Sequence) -> np.ndarray:
    return np.array([as_point(p).as_array() for p in points], dtype=float)
