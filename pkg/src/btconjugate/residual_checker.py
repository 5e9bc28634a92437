"""Finite-difference residuals of the Maxwell and wave equations.

Fields are only ever *sampled*; derivatives come from second-order central
differences on the interior of a space-time grid, so nothing here can share
an algebra mistake with the closed-form constructors.

For a medium with conductivity ``sigma`` the checked equations are

    div E = 0,  div B = 0,  curl E + B_t = 0,  curl B - mu sigma E - eps mu E_t = 0,
    lap F - eps mu F_tt - mu sigma F_t = 0   for F in (E, B),

which reduce to the source-free system when ``sigma = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .maxwell_vacuum import EMFieldPair, Medium
from .vectors_grid import GridError, GridSpec, SampledField, interior, interior_diff, sample

__all__ = [
    "ResidualEntry",
    "ResidualReport",
    "ConvergenceReport",
    "maxwell_residual",
    "maxwell_residual_sampled",
    "wave_residual",
    "wave_residual_sampled",
    "convergence_order",
    "refinement_grids",
    "maxwell_convergence",
    "wave_convergence",
    "div_curl",
]

EPS = np.finfo(float).eps
# rounding noise of a stencil is ~ eps * |F| / h**order; residuals under this
# multiple of that estimate are treated as exactly zero
NOISE_FACTOR = 1e3

MAXWELL_LABELS = ("div-E", "div-B", "curl-E", "curl-B")


@dataclass(frozen=True)
class ResidualEntry:
    label: str
    max: float
    rms: float
    noise_floor: float = 0.0
    scale: float = 1.0

    @property
    def relative(self) -> float:
        """``max`` divided by the largest field magnitude on the same nodes."""
        return self.max / self.scale if self.scale > 0 else self.max


@dataclass(frozen=True)
class ResidualReport:
    entries: tuple
    spacing: tuple
    nodes: int

    def __getitem__(self, label: str) -> ResidualEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    @property
    def labels(self) -> tuple:
        return tuple(e.label for e in self.entries)

    def as_dict(self) -> dict:
        return {
            "spacing": list(self.spacing),
            "nodes": self.nodes,
            "residuals": {e.label: {"max": e.max, "rms": e.rms, "scale": e.scale}
                          for e in self.entries},
        }


@dataclass(frozen=True)
class ConvergenceReport:
    """Log-log fit of residual against step size.

    ``exact`` is set when every residual sits at rounding level; then no
    slope is fitted.
    """

    label: str
    steps: tuple
    residuals: tuple
    slope: float | None
    fit_residual: float | None
    exact: bool = False
    monotone: bool = True
    warnings: tuple = field(default_factory=tuple)

    def within(self, target: float = 2.0, tol: float = 0.1, allow_exact: bool = True) -> bool:
        if self.exact:
            return allow_exact
        return abs(self.slope - target) <= tol

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "steps": list(self.steps),
            "residuals": list(self.residuals),
            "slope": "exact" if self.exact else self.slope,
            "fit_residual": self.fit_residual,
            "monotone": self.monotone,
            "warnings": list(self.warnings),
        }


def _magnitude(values):
    mag = np.abs(values)
    if mag.ndim > 4:
        mag = np.sqrt(np.sum(mag**2, axis=-1))
    return mag


def _entry(label, values, floor, field_values):
    mag = _magnitude(values)
    scale = float(_magnitude(interior(field_values)).max(initial=0.0))
    return ResidualEntry(label, float(mag.max()), float(np.sqrt(np.mean(mag**2))),
                         float(floor), scale)


def _require_interior(grid: GridSpec):
    if min(grid.shape) < 3:
        raise GridError(f"grid {grid.shape} has no interior; need at least 3 points per axis")


def _curl(F, h):
    def d(comp, axis):
        return interior_diff(F[..., comp], axis, h[axis])

    return np.stack([d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)], axis=-1)


def _div(F, h):
    return sum(interior_diff(F[..., a], a, h[a]) for a in range(3))


def _floor(scale, h, order):
    return NOISE_FACTOR * EPS * scale * sum(1.0 / hh**order for hh in h)


def maxwell_residual_sampled(E: SampledField, B: SampledField, medium: Medium) -> ResidualReport:
    """Maxwell residuals from pre-sampled fields on a shared grid."""
    grid = E.grid
    _require_interior(grid)
    h = grid.spacing
    Ev, Bv = E.values, B.values
    Et = interior_diff(Ev, 3, h[3])
    Bt = interior_diff(Bv, 3, h[3])
    eps, mu, sigma = medium.eps, medium.mu, medium.sigma
    e_scale = float(np.max(np.abs(Ev), initial=0.0))
    b_scale = float(np.max(np.abs(Bv), initial=0.0))
    curl_e = _curl(Ev, h) + Bt
    curl_b = _curl(Bv, h) - mu * sigma * interior(Ev) - eps * mu * Et
    entries = (
        _entry("div-E", _div(Ev, h), _floor(e_scale, h[:3], 1), Ev),
        _entry("div-B", _div(Bv, h), _floor(b_scale, h[:3], 1), Bv),
        _entry("curl-E", curl_e, _floor(e_scale, h[:3], 1) + _floor(b_scale, h[3:], 1), Ev),
        _entry("curl-B", curl_b,
               _floor(b_scale, h[:3], 1) + eps * mu * _floor(e_scale, h[3:], 1), Bv),
    )
    return ResidualReport(entries, tuple(float(x) for x in h), int(np.prod([n - 2 for n in grid.shape])))


def maxwell_residual(pair: EMFieldPair, medium: Medium, grid: GridSpec) -> ResidualReport:
    return maxwell_residual_sampled(sample(pair.E, grid), sample(pair.B, grid), medium)


def wave_residual_sampled(F: SampledField, medium: Medium, label: str = "wave") -> ResidualReport:
    grid = F.grid
    if min(grid.shape) < 5:
        raise GridError(f"grid {grid.shape} too small for second derivatives; need 5 points per axis")
    h = grid.spacing
    V = F.values
    lap = sum(interior_diff(V, a, h[a], order=2) for a in range(3))
    res = lap - medium.eps * medium.mu * interior_diff(V, 3, h[3], order=2) \
        - medium.mu * medium.sigma * interior_diff(V, 3, h[3])
    scale = float(np.max(np.abs(V), initial=0.0))
    floor = _floor(scale, h[:3], 2) + medium.eps * medium.mu * _floor(scale, h[3:], 2)
    return ResidualReport((_entry(label, res, floor, V),), tuple(float(x) for x in h),
                          int(np.prod([n - 2 for n in grid.shape])))


def wave_residual(fn: Callable, medium: Medium, grid: GridSpec, label: str = "wave") -> ResidualReport:
    """Residual of ``lap F - eps mu F_tt - mu sigma F_t`` for one field of a pair."""
    return wave_residual_sampled(sample(fn, grid), medium, label)


def convergence_order(check: Callable[[float], float] | Sequence[float], steps: Sequence[float],
                      label: str = "", floor: float | Sequence[float] = 0.0) -> ConvergenceReport:
    """Least-squares slope of ``log(residual)`` against ``log(h)``.

    ``check`` is either a callable ``h -> residual`` or the residuals
    themselves. ``steps`` must hold at least three values, each half of the
    previous. Residuals at or below ``floor`` count as zero; if all are zero
    the report is marked exact.
    """
    steps = tuple(float(h) for h in steps)
    if len(steps) < 3:
        raise ValueError(f"need at least 3 step sizes, got {len(steps)}")
    for a, b in zip(steps, steps[1:]):
        if not np.isclose(b, a / 2, rtol=1e-9):
            raise ValueError(f"steps must halve successively; got {a} then {b}")
    if callable(check):
        residuals = tuple(float(check(h)) for h in steps)
    else:
        residuals = tuple(float(r) for r in check)
        if len(residuals) != len(steps):
            raise ValueError("one residual per step required")
    floors = np.broadcast_to(np.asarray(floor, dtype=float), (len(steps),))
    res = np.asarray(residuals)
    if np.all(res <= floors):
        return ConvergenceReport(label, steps, residuals, None, None, exact=True)
    notes = []
    monotone = bool(np.all(np.diff(res) < 0))
    if not monotone:
        notes.append("residuals do not decrease monotonically")
    if np.any(res <= floors):
        notes.append("some residuals are at rounding level")
    logs = np.log(np.maximum(res, np.finfo(float).tiny))
    logh = np.log(steps)
    slope, intercept = np.polyfit(logh, logs, 1)
    fit = float(np.sqrt(np.mean((logs - (slope * logh + intercept)) ** 2)))
    return ConvergenceReport(label, steps, residuals, float(slope), fit,
                             monotone=monotone, warnings=tuple(notes))


def refinement_grids(base: GridSpec, levels: int = 4) -> list[GridSpec]:
    """``base`` and ``levels - 1`` successive halvings about the same center."""
    grids = [base]
    for _ in range(levels - 1):
        grids.append(grids[-1].refined(2))
    return grids


def _relative_convergence(reports, steps, label):
    # normalizing by the field on the same nodes removes the drift of a
    # decaying envelope's maximum as the box shrinks
    entries = [r[label] for r in reports]
    return convergence_order([e.relative for e in entries], steps, label,
                             floor=[e.noise_floor / e.scale if e.scale > 0 else e.noise_floor
                                    for e in entries])


def maxwell_convergence(pair: EMFieldPair, medium: Medium, base: GridSpec,
                        levels: int = 4) -> tuple[dict, list]:
    """Convergence of each Maxwell residual over grid halvings.

    The fitted quantity is the residual max relative to the field magnitude
    on the same nodes.

    Returns ``({label: ConvergenceReport}, [ResidualReport per level])``.
    """
    reports = [maxwell_residual(pair, medium, g) for g in refinement_grids(base, levels)]
    steps = [r.spacing[0] for r in reports]
    out = {}
    for label in MAXWELL_LABELS:
        out[label] = _relative_convergence(reports, steps, label)
    return out, reports


def wave_convergence(fn: Callable, medium: Medium, base: GridSpec, levels: int = 4,
                     label: str = "wave") -> tuple[ConvergenceReport, list]:
    reports = [wave_residual(fn, medium, g, label) for g in refinement_grids(base, levels)]
    steps = [r.spacing[0] for r in reports]
    conv = _relative_convergence(reports, steps, label)
    return conv, reports


def div_curl(F: SampledField) -> np.ndarray:
    """Discrete divergence of the discrete curl, on the two-node-shell interior."""
    h = F.grid.spacing
    C = _curl(F.values, h)
    return _div(C, h)
