"""CSV export and import of sampled (E, B) pairs.

One row per grid node in x, y, z, t row-major order; each complex component
is split into ``_re``/``_im`` columns. Values are written with 17
significant digits so doubles survive the round trip unchanged.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .vectors_grid import GridError, GridSpec, SampledField

__all__ = ["CSV_COLUMNS", "write_field_csv", "read_field_csv"]

CSV_COLUMNS = ["x", "y", "z", "t"] + [
    f"{f}{c}_{part}" for f in "EB" for c in "xyz" for part in ("re", "im")
]


def _split(values):
    v = np.asarray(values, dtype=complex).reshape(-1, 3)
    out = np.empty((v.shape[0], 6))
    out[:, 0::2] = v.real
    out[:, 1::2] = v.imag
    return out


def write_field_csv(path, E: SampledField, B: SampledField) -> Path:
    if E.values.shape != B.values.shape:
        raise GridError("E and B must be sampled on the same grid")
    r, t = E.grid.nodes()
    table = np.column_stack([r.reshape(-1, 3), t.reshape(-1), _split(E.values), _split(B.values)])
    path = Path(path)
    np.savetxt(path, table, fmt="%.17g", delimiter=",", header=",".join(CSV_COLUMNS), comments="")
    return path


def read_field_csv(path) -> tuple[SampledField, SampledField]:
    """Rebuild the grid and both fields from a file written by :func:`write_field_csv`."""
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip().split(",")
    if header != CSV_COLUMNS:
        raise ValueError(f"{path}: unexpected header {header}")
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    axes = [np.unique(table[:, a]) for a in range(4)]
    shape = tuple(len(a) for a in axes)
    if int(np.prod(shape)) != table.shape[0]:
        raise GridError(f"{path}: {table.shape[0]} rows do not form a {shape} lattice")
    grid = GridSpec(
        origin=[a[0] for a in axes[:3]],
        extent=[a[-1] - a[0] for a in axes[:3]],
        points=shape[:3],
        t0=axes[3][0],
        t_extent=axes[3][-1] - axes[3][0],
        t_points=shape[3],
    )

    def join(cols):
        c = table[:, cols]
        return (c[:, 0::2] + 1j * c[:, 1::2]).reshape(*shape, 3)

    return SampledField(grid, join(slice(4, 10))), SampledField(grid, join(slice(10, 16)))
