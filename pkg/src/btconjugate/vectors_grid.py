"""Complex 3-vectors, sampling grids and central-difference stencils.

Vectors are plain numpy arrays whose trailing axis has length 3, so every
operation here broadcasts over leading axes. Field callables take positions
of shape ``(..., 3)`` and times of shape ``(...)`` and return ``(..., 3)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "GridError",
    "FieldEvaluationError",
    "cvec",
    "rvec",
    "cross",
    "dot",
    "norm",
    "unit",
    "GridSpec",
    "SampledField",
    "sample",
    "central_diff",
    "interior_diff",
    "interior",
]

FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]

MIN_POINTS = 5
AXES = ("x", "y", "z", "t")


class GridError(ValueError):
    """Invalid grid geometry or a stencil request outside the interior."""


class FieldEvaluationError(RuntimeError):
    """A field callable failed at a particular grid node."""

    def __init__(self, index, position, time, cause):
        self.index = index
        self.position = position
        self.time = time
        super().__init__(
            f"field evaluation failed at node {index} "
            f"(r={tuple(position)}, t={time}): {cause}"
        )


def cvec(x=0.0, y=0.0, z=0.0) -> np.ndarray:
    return np.array([x, y, z], dtype=complex)


def rvec(x=0.0, y=0.0, z=0.0) -> np.ndarray:
    return np.array([x, y, z], dtype=float)


def cross(a, b) -> np.ndarray:
    """Component-wise cross product, no conjugation, broadcasting on ``[..., 3]``."""
    a = np.asarray(a)
    b = np.asarray(b)
    ax, ay, az = a[..., 0], a[..., 1], a[..., 2]
    bx, by, bz = b[..., 0], b[..., 1], b[..., 2]
    return np.stack([ay * bz - az * by, az * bx - ax * bz, ax * by - ay * bx], axis=-1)


def dot(a, b):
    """Bilinear (unconjugated) product ``a.x*b.x + a.y*b.y + a.z*b.z``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def norm(a):
    """Hermitian length sqrt(|x|^2 + |y|^2 + |z|^2)."""
    mag = np.abs(np.asarray(a))
    m = mag.max(axis=-1, keepdims=True)
    # rescale so tiny components do not underflow when squared
    safe = np.where(m > 0, m, 1.0)
    return (m * np.sqrt(np.sum((mag / safe) ** 2, axis=-1, keepdims=True)))[..., 0]


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = norm(v)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


@dataclass(frozen=True)
class GridSpec:
    """Uniform space-time lattice.

    Nodes along a spatial axis are ``origin + extent * i / (n - 1)`` and
    likewise for time. Every axis needs at least ``MIN_POINTS`` nodes.
    """

    origin: np.ndarray
    extent: np.ndarray
    points: tuple[int, int, int]
    t0: float = 0.0
    t_extent: float = 1.0
    t_points: int = MIN_POINTS

    def __post_init__(self):
        origin = np.asarray(self.origin, dtype=float).reshape(3)
        extent = np.asarray(self.extent, dtype=float).reshape(3)
        points = tuple(int(p) for p in self.points)
        if len(points) != 3:
            raise GridError("points must give one count per spatial axis")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "extent", extent)
        object.__setattr__(self, "points", points)
        for name, n, ext in zip(AXES, self.shape, (*extent, self.t_extent)):
            if n < MIN_POINTS:
                raise GridError(f"axis {name} has {n} points; at least {MIN_POINTS} required")
            if not ext > 0.0:
                raise GridError(f"axis {name} has non-positive extent {ext}")

    @classmethod
    def centered(cls, center, spacing, points: int = 9, t_center: float = 0.0,
                 dt: float | None = None, t_points: int | None = None) -> "GridSpec":
        """Cubic grid of ``points`` nodes per axis around ``center``.

        ``spacing`` is the spatial step and ``dt`` the time step (defaults to
        ``spacing``). Odd ``points`` put a node exactly on the center.
        """
        dt = spacing if dt is None else dt
        t_points = points if t_points is None else t_points
        ext = spacing * (points - 1)
        t_ext = dt * (t_points - 1)
        center = np.asarray(center, dtype=float)
        return cls(center - ext / 2, np.full(3, ext), (points,) * 3,
                   t_center - t_ext / 2, t_ext, t_points)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return (*self.points, self.t_points)

    @property
    def spacing(self) -> np.ndarray:
        """Steps ``(hx, hy, hz, dt)``."""
        ext = np.array([*self.extent, self.t_extent])
        return ext / (np.array(self.shape) - 1)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def axis_values(self, axis: int) -> np.ndarray:
        n = self.shape[axis]
        if axis == 3:
            return self.t0 + self.t_extent * np.arange(n) / (n - 1)
        return self.origin[axis] + self.extent[axis] * np.arange(n) / (n - 1)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Positions ``(nx, ny, nz, nt, 3)`` and times ``(nx, ny, nz, nt)``."""
        x, y, z, t = np.meshgrid(*(self.axis_values(a) for a in range(4)), indexing="ij")
        return np.stack([x, y, z], axis=-1), t

    def refined(self, factor: int = 2) -> "GridSpec":
        """Same node count, every step divided by ``factor``, same center."""
        center = self.origin + self.extent / 2
        tc = self.t0 + self.t_extent / 2
        ext = self.extent / factor
        text = self.t_extent / factor
        return GridSpec(center - ext / 2, ext, self.points, tc - text / 2, text, self.t_points)


@dataclass(frozen=True)
class SampledField:
    """Field values on every node of ``grid``; shape ``grid.shape + (3,)``."""

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.shape[:4] != self.grid.shape:
            raise GridError(
                f"value array shape {values.shape} does not match grid {self.grid.shape}"
            )
        object.__setattr__(self, "values", values)


def _evaluate(fn: FieldFn, r, t):
    out = np.asarray(fn(r, t))
    if out.shape in (r.shape, np.shape(t)):
        return out
    # constant fields come back without the node axes
    return np.broadcast_to(out, r.shape).copy()


def sample(fn: FieldFn, grid: GridSpec) -> SampledField:
    """Evaluate ``fn`` on every node, row-major in x, y, z, t.

    The callable is invoked once on the whole lattice. If that fails, nodes
    are re-evaluated one by one so the error can name the offending node.
    """
    r, t = grid.nodes()
    try:
        values = _evaluate(fn, r, t)
    except Exception as exc:
        for index in np.ndindex(*grid.shape):
            try:
                _evaluate(fn, r[index], t[index])
            except Exception as node_exc:
                raise FieldEvaluationError(index, r[index], float(t[index]), node_exc) from node_exc
        raise FieldEvaluationError(None, (), float("nan"), exc) from exc
    return SampledField(grid, values)


def central_diff(samples: SampledField, axis: int, order: int, index) -> np.ndarray:
    """Second-order central difference at a single node.

    ``axis`` is 0..3 for x, y, z, t. Order 1 is ``(f+ - f-)/(2h)``, order 2 is
    ``(f+ - 2 f0 + f-)/h^2``. The node must have a neighbour on both sides.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    index = tuple(int(i) for i in index)
    n = samples.grid.shape[axis]
    i = index[axis]
    if not 1 <= i <= n - 2:
        raise GridError(
            f"node index {i} on axis {AXES[axis]} is on the boundary (valid 1..{n - 2})"
        )
    h = samples.grid.spacing[axis]
    plus = list(index)
    minus = list(index)
    plus[axis] += 1
    minus[axis] -= 1
    fp = samples.values[tuple(plus)]
    fm = samples.values[tuple(minus)]
    if order == 1:
        return (fp - fm) / (2 * h)
    return (fp - 2 * samples.values[index] + fm) / h**2


def interior(values: np.ndarray, ndim: int = 4, shell: int = 1) -> np.ndarray:
    """Drop a boundary shell of ``shell`` nodes from the first ``ndim`` axes."""
    sl = (slice(shell, -shell),) * ndim
    return values[sl]


def interior_diff(values: np.ndarray, axis: int, h: float, order: int = 1, ndim: int = 4) -> np.ndarray:
    """Central difference along ``axis`` evaluated on the one-node-shell interior.

    The result has shape ``(n0-2, ..., n_{ndim-1}-2, ...)`` matching
    ``interior(values, ndim)``.
    """
    def window(offset):
        sl = [slice(1, -1)] * ndim
        n = values.shape[axis]
        sl[axis] = slice(1 + offset, n - 1 + offset)
        return values[tuple(sl)]

    if order == 1:
        return (window(1) - window(-1)) / (2 * h)
    if order == 2:
        return (window(1) - 2 * window(0) + window(-1)) / h**2
    raise ValueError(f"order must be 1 or 2, got {order}")
