"""Conjugate monochromatic plane waves of the source-free Maxwell system.

A plane wave ``E0 exp(i(k.r - w t))`` solves the vector wave equation for
any amplitude once ``k = w/c``; it only becomes one half of an
electromagnetic field when paired with ``B = (1/c) khat x E`` and ``E0`` is
transverse. The helpers here build that pair, its real (linearly
polarized) form and the algebraic checks on the amplitudes.

Units are the caller's: pass SI ``eps``/``mu`` or normalized ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .vectors_grid import cross, dot, norm

__all__ = [
    "WrongMediumError",
    "TransversalityError",
    "PolarizationError",
    "Medium",
    "PlaneWaveSpec",
    "EMFieldPair",
    "AmplitudeReport",
    "plane_wave",
    "vacuum_wavenumber",
    "make_conjugate_vacuum",
    "project_transverse",
    "linear_polarization",
    "real_fields_vacuum",
    "amplitude_relations_check",
]

UNIT_TOL = 1e-12
TRANSVERSE_TOL = 1e-12


class WrongMediumError(ValueError):
    pass


class TransversalityError(ValueError):
    pass


class PolarizationError(ValueError):
    pass


@dataclass(frozen=True)
class Medium:
    """Linear isotropic medium with permittivity, permeability and conductivity."""

    eps: float = 1.0
    mu: float = 1.0
    sigma: float = 0.0

    def __post_init__(self):
        if not (self.eps > 0 and self.mu > 0):
            raise ValueError(f"need eps > 0 and mu > 0, got eps={self.eps}, mu={self.mu}")
        if not self.sigma >= 0:
            raise ValueError(f"need sigma >= 0, got {self.sigma}")

    @property
    def speed(self) -> float:
        """Phase speed ``1/sqrt(eps mu)`` of a non-conducting medium."""
        return 1.0 / np.sqrt(self.eps * self.mu)


def _as_unit(v, what="khat"):
    v = np.asarray(v, dtype=float).reshape(3)
    n = norm(v)
    if abs(n - 1.0) > UNIT_TOL:
        raise ValueError(f"{what} must be a unit vector, |{what}| = {n!r}")
    return v


@dataclass(frozen=True)
class PlaneWaveSpec:
    """Parameters of ``E0 e^{i alpha} exp(i(k khat.r - omega t))``.

    ``alpha`` is an extra global phase, so a linearly polarized wave can be
    given as a real ``E0`` plus ``alpha``. Transversality is *not* checked
    here; constructors check it so the error surfaces where it matters.
    """

    E0: np.ndarray
    khat: np.ndarray
    omega: float
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "E0", np.asarray(self.E0, dtype=complex).reshape(3))
        object.__setattr__(self, "khat", _as_unit(self.khat))
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")

    @property
    def amplitude(self) -> np.ndarray:
        """Complex amplitude including the global phase."""
        return self.E0 * np.exp(1j * self.alpha)


FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class EMFieldPair:
    """An (E, B) pair of vectorized callables ``(r, t) -> (..., 3)``."""

    E: FieldFn
    B: FieldFn
    provenance: dict = field(default_factory=dict)


def plane_wave(amplitude, tau, k: float, omega: float, s: float = 0.0) -> FieldFn:
    """``amplitude * exp(-s tau.r) * exp(i(k tau.r - omega t))``.

    ``s = 0`` is the undamped vacuum wave.
    """
    amplitude = np.asarray(amplitude, dtype=complex)
    tau = np.asarray(tau, dtype=float)
    K = k + 1j * s

    def F(r, t):
        phase = np.exp(1j * (K * dot(tau, r) - omega * np.asarray(t)))
        return phase[..., None] * amplitude

    return F


def vacuum_wavenumber(omega: float, medium: Medium) -> float:
    if medium.sigma != 0:
        raise WrongMediumError(
            f"medium has sigma={medium.sigma}; use maxwell_conductor.solve_dispersion"
        )
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    return omega * np.sqrt(medium.eps * medium.mu)


def _check_transverse(E0, tau):
    d = dot(tau, E0)
    if abs(d) > TRANSVERSE_TOL * max(norm(E0), 1e-300):
        raise TransversalityError(
            f"amplitude is not transverse: khat . E0 = {complex(d)} (must vanish, k.E0 = 0); "
            "use project_transverse to remove the longitudinal part"
        )


def make_conjugate_vacuum(spec: PlaneWaveSpec, medium: Medium) -> EMFieldPair:
    """Plane-wave E with its conjugate ``B = (1/c) khat x E``."""
    k = vacuum_wavenumber(spec.omega, medium)
    E0 = spec.amplitude
    _check_transverse(E0, spec.khat)
    c = medium.speed
    B0 = cross(spec.khat, E0) / c
    return EMFieldPair(
        plane_wave(E0, spec.khat, k, spec.omega),
        plane_wave(B0, spec.khat, k, spec.omega),
        {"kind": "vacuum", "spec": spec, "medium": medium, "k": k, "E0": E0, "B0": B0},
    )


def project_transverse(E0, khat) -> np.ndarray:
    E0 = np.asarray(E0, dtype=complex)
    khat = np.asarray(khat, dtype=float)
    return E0 - khat * dot(khat, E0)


def linear_polarization(E0, rtol: float = 1e-12) -> tuple[np.ndarray, float]:
    """Split ``E0 = E0R e^{i alpha}`` with ``E0R`` real.

    Raises :class:`PolarizationError` when real and imaginary parts are not
    parallel (circular or elliptical polarization).
    """
    E0 = np.asarray(E0, dtype=complex).reshape(3)
    scale = norm(E0)
    if scale == 0:
        return np.zeros(3), 0.0
    j = int(np.argmax(np.abs(E0)))
    alpha = float(np.angle(E0[j]))
    rotated = E0 * np.exp(-1j * alpha)
    if np.max(np.abs(rotated.imag)) > rtol * scale:
        raise PolarizationError(
            "amplitude is not linearly polarized (real and imaginary parts not parallel); "
            "only linear polarization has a single-phase real form"
        )
    return rotated.real.copy(), alpha


def real_fields_vacuum(spec: PlaneWaveSpec, medium: Medium) -> EMFieldPair:
    """In-phase real fields ``E0R cos(k.r - wt + a)`` and ``(1/c) khat x E0R cos(...)``."""
    k = vacuum_wavenumber(spec.omega, medium)
    _check_transverse(spec.amplitude, spec.khat)
    E0R, alpha = linear_polarization(spec.amplitude)
    c = medium.speed
    B0R = cross(spec.khat, E0R) / c
    khat, omega = spec.khat, spec.omega

    def phase(r, t):
        return np.cos(k * dot(khat, r) - omega * np.asarray(t) + alpha)[..., None]

    return EMFieldPair(
        lambda r, t: phase(r, t) * E0R,
        lambda r, t: phase(r, t) * B0R,
        {"kind": "vacuum-real", "spec": spec, "medium": medium, "k": k,
         "E0R": E0R, "alpha": alpha},
    )


@dataclass(frozen=True)
class AmplitudeReport:
    """Residual magnitudes of the algebraic amplitude conditions.

    ``fourth_derived`` is the fourth residual rebuilt from the first
    relation's residual vector and the wavenumber identity; ``redundant``
    records that it agrees with the directly computed one.
    """

    names: tuple
    residuals: tuple
    scales: tuple
    fourth_derived: float
    redundant: bool

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.residuals))

    def passes(self, rtol: float = 1e-12) -> bool:
        return all(r <= rtol * s for r, s in zip(self.residuals, self.scales)) and self.redundant


def amplitude_relations_check(E0, B0, kvec, omega: float, medium: Medium,
                              rtol: float = 1e-12) -> AmplitudeReport:
    """Residuals of ``k.E0 = 0``, ``k.B0 = 0``, ``k x E0 = w B0``, ``k x B0 = -(w/c^2) E0``.

    The last relation is also rebuilt as
    ``[k (k.E0) - k x R3]/w + (w/c^2 - k^2/w) E0`` with ``R3 = k x E0 - w B0``,
    which is an identity; the two values are compared as a redundancy check.
    """
    E0 = np.asarray(E0, dtype=complex)
    B0 = np.asarray(B0, dtype=complex)
    kvec = np.asarray(kvec, dtype=float)
    c2 = 1.0 / (medium.eps * medium.mu)
    kk = norm(kvec)
    r3v = cross(kvec, E0) - omega * B0
    r4v = cross(kvec, B0) + (omega / c2) * E0
    r4_identity = (kvec * dot(kvec, E0) - cross(kvec, r3v)) / omega + (omega / c2 - kk**2 / omega) * E0
    residuals = (
        float(abs(dot(kvec, E0))),
        float(abs(dot(kvec, B0))),
        float(norm(r3v)),
        float(norm(r4v)),
    )
    eN, bN = norm(E0), norm(B0)
    scales = tuple(float(max(s, np.finfo(float).tiny)) for s in (
        kk * eN,
        kk * bN,
        kk * eN + omega * bN,
        kk * bN + omega / c2 * eN,
    ))
    gap = float(norm(r4v - r4_identity))
    return AmplitudeReport(
        ("k.E0", "k.B0", "k x E0 - w B0", "k x B0 + (w/c^2) E0"),
        residuals,
        scales,
        float(norm(r4_identity)),
        gap <= rtol * scales[3],
    )
