"""Attenuated conjugate plane waves in a linear Ohmic conductor.

The damped wave ``E0 exp(-s tau.r) exp(i(k tau.r - w t))`` solves the
telegraph-type equation ``lap F - eps mu F_tt - mu sigma F_t = 0`` when

    s^2 - k^2 + eps mu w^2 = 0,    mu sigma w - 2 s k = 0,

and pairs with ``B = ((k + i s)/w) tau x E``. Only the decaying branch
``k > 0, s >= 0`` is produced.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .maxwell_vacuum import (
    AmplitudeReport,
    EMFieldPair,
    Medium,
    _as_unit,
    _check_transverse,
    linear_polarization,
    plane_wave,
)
from .vectors_grid import cross, dot, norm

__all__ = [
    "DispersionMismatchError",
    "ConductorDispersion",
    "AttenuatedWaveSpec",
    "solve_dispersion",
    "dispersion_residuals",
    "make_conjugate_conductor",
    "conductor_amplitude_check",
    "real_fields_conductor",
]

DISPERSION_RTOL = 1e-10


class DispersionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ConductorDispersion:
    k: float
    s: float
    phi: float
    omega: float
    eps: float
    mu: float
    sigma: float

    @property
    def K(self) -> complex:
        """Complex wavenumber ``k + i s``."""
        return complex(self.k, self.s)

    @property
    def phase_speed(self) -> float:
        return self.omega / self.k

    def residuals(self) -> tuple[float, float]:
        return dispersion_residuals(self.k, self.s, self.omega,
                                    Medium(self.eps, self.mu, self.sigma))


def dispersion_residuals(k: float, s: float, omega: float, medium: Medium) -> tuple[float, float]:
    """Relative residuals of both algebraic constraints.

    Each is normalized by the largest magnitude among its terms.
    """
    em = medium.eps * medium.mu * omega**2
    a = s**2 - k**2 + em
    b = medium.mu * medium.sigma * omega - 2 * s * k
    sa = max(s**2, k**2, em)
    sb = max(abs(medium.mu * medium.sigma * omega), abs(2 * s * k), np.finfo(float).tiny)
    return abs(a) / sa, abs(b) / sb


def solve_dispersion(omega: float, medium: Medium) -> ConductorDispersion:
    """Closed-form decaying root of the conductor dispersion system.

    Eliminating ``s = mu sigma w / (2k)`` leaves the biquadratic
    ``k^4 - eps mu w^2 k^2 - (mu sigma w)^2/4 = 0`` whose positive root is
    ``k = w sqrt(eps mu / 2) sqrt(1 + sqrt(1 + (sigma/(eps w))^2))``.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    eps, mu, sigma = medium.eps, medium.mu, medium.sigma
    ratio = sigma / (eps * omega)
    k = omega * np.sqrt(eps * mu / 2) * np.sqrt(1 + np.hypot(1.0, ratio))
    s = mu * sigma * omega / (2 * k)
    return ConductorDispersion(float(k), float(s), float(np.arctan2(s, k)),
                               float(omega), eps, mu, sigma)


@dataclass(frozen=True)
class AttenuatedWaveSpec:
    """Amplitude, direction and dispersion of a damped plane wave.

    As in the vacuum case the complex amplitude is ``E0 e^{i alpha}``.
    """

    E0: np.ndarray
    tau: np.ndarray
    omega: float
    dispersion: ConductorDispersion
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "E0", np.asarray(self.E0, dtype=complex).reshape(3))
        object.__setattr__(self, "tau", _as_unit(self.tau, "tau"))
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")

    @property
    def amplitude(self) -> np.ndarray:
        return self.E0 * np.exp(1j * self.alpha)


def _check_dispersion(spec: AttenuatedWaveSpec, medium: Medium):
    d = spec.dispersion
    r1, r2 = dispersion_residuals(d.k, d.s, spec.omega, medium)
    if r1 > DISPERSION_RTOL or r2 > DISPERSION_RTOL:
        raise DispersionMismatchError(
            f"(k, s) = ({d.k}, {d.s}) do not solve the dispersion system for omega={spec.omega}, "
            f"{medium}: relative residuals {r1:.3e} and {r2:.3e}"
        )


def make_conjugate_conductor(spec: AttenuatedWaveSpec, medium: Medium) -> EMFieldPair:
    """Damped E with its conjugate ``B = ((k + i s)/w) tau x E``."""
    _check_transverse(spec.amplitude, spec.tau)
    _check_dispersion(spec, medium)
    d = spec.dispersion
    E0 = spec.amplitude
    B0 = d.K / spec.omega * cross(spec.tau, E0)
    return EMFieldPair(
        plane_wave(E0, spec.tau, d.k, spec.omega, d.s),
        plane_wave(B0, spec.tau, d.k, spec.omega, d.s),
        {"kind": "conductor", "spec": spec, "medium": medium, "k": d.k, "s": d.s,
         "E0": E0, "B0": B0},
    )


def conductor_amplitude_check(E0, B0, tau, dispersion: ConductorDispersion, medium: Medium,
                              rtol: float = 1e-12) -> AmplitudeReport:
    """Residuals of the four amplitude conditions in a conductor.

    ``k.E0``, ``k.B0``, ``K tau x E0 - w B0`` and
    ``K tau x B0 + (eps mu w + i mu sigma) E0`` with ``K = k + i s``. The
    fourth is also rebuilt from ``R3 = K tau x E0 - w B0`` as
    ``(K^2/w) tau (tau.E0) - K tau x R3 / w + (eps mu w + i mu sigma - K^2/w) E0``.
    """
    E0 = np.asarray(E0, dtype=complex)
    B0 = np.asarray(B0, dtype=complex)
    tau = np.asarray(tau, dtype=float)
    w = dispersion.omega
    K = dispersion.K
    kvec = dispersion.k * tau
    source = medium.eps * medium.mu * w + 1j * medium.mu * medium.sigma
    r3v = K * cross(tau, E0) - w * B0
    r4v = K * cross(tau, B0) + source * E0
    r4_identity = (K**2 / w) * tau * dot(tau, E0) - K * cross(tau, r3v) / w + (source - K**2 / w) * E0
    residuals = (
        float(abs(dot(kvec, E0))),
        float(abs(dot(kvec, B0))),
        float(norm(r3v)),
        float(norm(r4v)),
    )
    eN, bN = norm(E0), norm(B0)
    tiny = np.finfo(float).tiny
    scales = tuple(float(max(x, tiny)) for x in (
        dispersion.k * eN,
        dispersion.k * bN,
        abs(K) * eN + w * bN,
        abs(K) * bN + abs(source) * eN,
    ))
    gap = float(norm(r4v - r4_identity))
    return AmplitudeReport(
        ("k.E0", "k.B0", "K tau x E0 - w B0", "K tau x B0 + (eps mu w + i mu sigma) E0"),
        residuals,
        scales,
        float(norm(r4_identity)),
        gap <= rtol * scales[3],
    )


def real_fields_conductor(spec: AttenuatedWaveSpec, medium: Medium) -> EMFieldPair:
    """Real damped fields; B lags E by the phase ``phi = arctan(s/k)``."""
    _check_transverse(spec.amplitude, spec.tau)
    _check_dispersion(spec, medium)
    E0R, alpha = linear_polarization(spec.amplitude)
    d = spec.dispersion
    tau, omega = spec.tau, spec.omega
    B0R = np.hypot(d.k, d.s) / omega * cross(tau, E0R)

    def envelope(r):
        return np.exp(-d.s * dot(tau, r))

    def E(r, t):
        return (envelope(r) * np.cos(d.k * dot(tau, r) - omega * np.asarray(t) + alpha))[..., None] * E0R

    def B(r, t):
        arg = d.k * dot(tau, r) - omega * np.asarray(t) + alpha + d.phi
        return (envelope(r) * np.cos(arg))[..., None] * B0R

    return EMFieldPair(E, B, {"kind": "conductor-real", "spec": spec, "medium": medium,
                              "k": d.k, "s": d.s, "phi": d.phi, "E0R": E0R, "alpha": alpha})
