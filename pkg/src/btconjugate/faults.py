"""Deliberately wrong field pairs, to show the residual checker rejects them.

Fault strings:

``scale-B:<f>``
    multiply the magnetic amplitude by ``f``
``scale-k:<f>``
    multiply the wavenumber of both fields by ``f``
``zero-s``
    drop the attenuation of a conductor wave while keeping ``k``
"""
from __future__ import annotations

from .maxwell_conductor import AttenuatedWaveSpec
from .maxwell_vacuum import EMFieldPair, Medium, PlaneWaveSpec, plane_wave, vacuum_wavenumber
from .vectors_grid import cross

__all__ = ["FAULTS", "parse_fault", "broken_pair"]

FAULTS = ("scale-B", "scale-k", "zero-s")


def parse_fault(text: str) -> tuple[str, float]:
    name, _, arg = text.partition(":")
    if name not in FAULTS:
        raise ValueError(f"unknown fault {name!r}; expected one of {', '.join(FAULTS)}")
    if name == "zero-s":
        if arg:
            raise ValueError("zero-s takes no argument")
        return name, 0.0
    try:
        return name, float(arg)
    except ValueError:
        raise ValueError(f"fault {name} needs a numeric factor, e.g. {name}:2") from None


def broken_pair(spec, medium: Medium, fault: str) -> EMFieldPair:
    """Build the plane-wave pair for ``spec`` with ``fault`` injected.

    Transversality and dispersion are not checked, on purpose.
    """
    name, factor = parse_fault(fault)
    if isinstance(spec, PlaneWaveSpec):
        if name == "zero-s":
            raise ValueError("zero-s only applies to a conducting medium")
        tau = spec.khat
        k = vacuum_wavenumber(spec.omega, medium)
        s = 0.0
        E0 = spec.amplitude
        B0 = cross(tau, E0) / medium.speed
    elif isinstance(spec, AttenuatedWaveSpec):
        tau = spec.tau
        k, s = spec.dispersion.k, spec.dispersion.s
        E0 = spec.amplitude
        B0 = complex(k, s) / spec.omega * cross(tau, E0)
    else:
        raise TypeError(f"unsupported wave spec {type(spec).__name__}")

    if name == "scale-B":
        B0 = B0 * factor
    elif name == "scale-k":
        k = k * factor
    elif name == "zero-s":
        s = 0.0
        B0 = k / spec.omega * cross(tau, E0)
    return EMFieldPair(
        plane_wave(E0, tau, k, spec.omega, s),
        plane_wave(B0, tau, k, spec.omega, s),
        {"kind": "broken", "fault": fault, "k": k, "s": s, "E0": E0, "B0": B0},
    )
