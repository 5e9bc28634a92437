"""Run a full construction-plus-verification suite and collect a report.

Each runner returns a :class:`ReportBundle` whose ``checks`` list carries a
measured value, its tolerance and a pass flag; the verdict passes only if
every check does.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classical_bt as cbt
from .faults import broken_pair
from .fieldio import write_field_csv
from .maxwell_conductor import (
    AttenuatedWaveSpec,
    conductor_amplitude_check,
    dispersion_residuals,
    make_conjugate_conductor,
    real_fields_conductor,
    solve_dispersion,
)
from .maxwell_vacuum import (
    Medium,
    PlaneWaveSpec,
    PolarizationError,
    WrongMediumError,
    amplitude_relations_check,
    make_conjugate_vacuum,
    project_transverse,
    real_fields_vacuum,
    vacuum_wavenumber,
)
from .residual_checker import (
    MAXWELL_LABELS,
    convergence_order,
    maxwell_convergence,
    maxwell_residual,
    wave_convergence,
)
from .vectors_grid import GridSpec, norm, sample

__all__ = [
    "ALGEBRAIC_RTOL",
    "BT_TOL",
    "SLOPE_TARGET",
    "SLOPE_TOL",
    "Check",
    "ReportBundle",
    "WaveConfig",
    "ClassicalConfig",
    "run_dispersion",
    "run_wave",
    "run_classical",
]

ALGEBRAIC_RTOL = 1e-12
BT_TOL = 1e-10
SLOPE_TARGET = 2.0
SLOPE_TOL = 0.1
CONVERGENCE_DIVISIONS = 20
# dt = h/c would make space and time stencil errors cancel exactly on
# axis-aligned waves and hide the convergence order
TIME_DIVISIONS_RATIO = 1.5
PDE_H0 = 1e-2
EPS = np.finfo(float).eps


@dataclass
class Check:
    name: str
    max: float
    rms: float
    tolerance: float
    passed: bool
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "max": self.max, "rms": self.rms,
                "tolerance": self.tolerance, "pass": bool(self.passed), **self.extra}


@dataclass
class ReportBundle:
    scenario: str
    inputs: dict
    dispersion: dict | None = None
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.checks and all(c.passed for c in self.checks) else "fail"

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "inputs": self.inputs,
            "dispersion": self.dispersion,
            "checks": [c.as_dict() for c in self.checks],
            "verdict": self.verdict,
            **self.details,
        }

    def write_json(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.as_dict(), indent=2, default=_jsonable))
        return path


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [[float(z.real), float(z.imag)] for z in obj.ravel()]
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _convergence_check(name, conv, finest) -> Check:
    ok = conv.within(SLOPE_TARGET, SLOPE_TOL)
    return Check(name, finest.max, finest.rms, SLOPE_TOL, ok, {
        "kind": "convergence",
        "slope": "exact" if conv.exact else conv.slope,
        "target_slope": SLOPE_TARGET,
        "relative_residuals": list(conv.residuals),
        "steps": list(conv.steps),
    })


# ---------------------------------------------------------------- dispersion


def run_dispersion(omega: float, eps: float, mu: float, sigma: float) -> ReportBundle:
    medium = Medium(eps, mu, sigma)
    d = solve_dispersion(omega, medium)
    r1, r2 = d.residuals()
    bundle = ReportBundle(
        "dispersion",
        {"omega": omega, "eps": eps, "mu": mu, "sigma": sigma},
        {"k": d.k, "s": d.s, "phi": d.phi, "phase_speed": d.phase_speed,
         "residual_real": r1, "residual_imag": r2},
    )
    bundle.checks += [
        Check("dispersion: s^2 - k^2 + eps mu w^2", r1, r1, ALGEBRAIC_RTOL, r1 <= ALGEBRAIC_RTOL,
              {"kind": "relative"}),
        Check("dispersion: mu sigma w - 2 s k", r2, r2, ALGEBRAIC_RTOL, r2 <= ALGEBRAIC_RTOL,
              {"kind": "relative"}),
    ]
    return bundle


# ---------------------------------------------------------------- plane waves


@dataclass
class WaveConfig:
    scenario: str = "vacuum"
    E0: tuple = (1.0, 0.0, 0.0)
    khat: tuple = (0.0, 0.0, 1.0)
    omega: float = 1.0
    eps: float = 1.0
    mu: float = 1.0
    sigma: float = 0.0
    alpha: float = 0.0
    project: bool = False
    points: int = 9
    divisions: int = 8
    center: tuple = (0.0, 0.0, 0.0)
    t_center: float = 0.0
    levels: int = 4
    fault: str | None = None


def build_wave(cfg: WaveConfig):
    """Return ``(spec, medium, pair, notes)`` for a plane-wave scenario."""
    medium = Medium(cfg.eps, cfg.mu, cfg.sigma)
    khat = np.asarray(cfg.khat, dtype=float)
    E0 = np.asarray(cfg.E0, dtype=complex)
    notes = {}
    if cfg.project:
        E0 = project_transverse(E0, khat)
        notes["projected_E0"] = E0
    if cfg.scenario == "vacuum":
        if medium.sigma != 0:
            raise WrongMediumError("scenario 'vacuum' requires sigma = 0; use scenario 'conductor'")
        spec = PlaneWaveSpec(E0, khat, cfg.omega, cfg.alpha)
        pair = make_conjugate_vacuum(spec, medium)
    elif cfg.scenario == "conductor":
        d = solve_dispersion(cfg.omega, medium)
        spec = AttenuatedWaveSpec(E0, khat, cfg.omega, d, cfg.alpha)
        pair = make_conjugate_conductor(spec, medium)
    else:
        raise ValueError(f"not a plane-wave scenario: {cfg.scenario!r}")
    if cfg.fault:
        pair = broken_pair(spec, medium, cfg.fault)
        notes["fault"] = cfg.fault
    return spec, medium, pair, notes


def _wavenumber(spec, medium):
    if isinstance(spec, PlaneWaveSpec):
        return vacuum_wavenumber(spec.omega, medium)
    return spec.dispersion.k


def _grid(cfg, spec, medium, divisions, time_divisions=None):
    lam = 2 * np.pi / _wavenumber(spec, medium)
    period = 2 * np.pi / spec.omega
    time_divisions = divisions if time_divisions is None else time_divisions
    return GridSpec.centered(cfg.center, lam / divisions, cfg.points, cfg.t_center,
                             dt=period / time_divisions)


def run_wave(cfg: WaveConfig, csv_path=None) -> ReportBundle:
    spec, medium, pair, notes = build_wave(cfg)
    prov = pair.provenance
    inputs = {k: v for k, v in dataclasses.asdict(cfg).items()}
    inputs.update(notes)
    bundle = ReportBundle(cfg.scenario, inputs)

    tau = spec.khat if isinstance(spec, PlaneWaveSpec) else spec.tau
    if isinstance(spec, PlaneWaveSpec):
        amp = amplitude_relations_check(prov["E0"], prov["B0"], prov["k"] * tau, spec.omega, medium)
    else:
        d = spec.dispersion
        bundle.dispersion = {"k": d.k, "s": d.s, "phi": d.phi, "phase_speed": d.phase_speed}
        r1, r2 = d.residuals()
        bundle.checks += [
            Check("dispersion: s^2 - k^2 + eps mu w^2", r1, r1, ALGEBRAIC_RTOL, r1 <= ALGEBRAIC_RTOL,
                  {"kind": "relative"}),
            Check("dispersion: mu sigma w - 2 s k", r2, r2, ALGEBRAIC_RTOL, r2 <= ALGEBRAIC_RTOL,
                  {"kind": "relative"}),
        ]
        used = dataclasses.replace(d, k=prov["k"], s=prov["s"])
        amp = conductor_amplitude_check(prov["E0"], prov["B0"], tau, used, medium)
    for name, r, s in zip(amp.names, amp.residuals, amp.scales):
        bundle.checks.append(Check(f"amplitude: {name}", r, r, ALGEBRAIC_RTOL * s,
                                   r <= ALGEBRAIC_RTOL * s, {"kind": "absolute"}))
    bundle.checks.append(Check("amplitude: fourth relation implied by the first", amp.fourth_derived,
                               amp.fourth_derived, ALGEBRAIC_RTOL * amp.scales[3], amp.redundant,
                               {"kind": "redundancy"}))

    base = _grid(cfg, spec, medium, CONVERGENCE_DIVISIONS, CONVERGENCE_DIVISIONS * TIME_DIVISIONS_RATIO)
    conv, reports = maxwell_convergence(pair, medium, base, cfg.levels)
    for label in MAXWELL_LABELS:
        bundle.checks.append(_convergence_check(f"maxwell: {label}", conv[label], reports[-1][label]))
    for fn, label in ((pair.E, "wave-E"), (pair.B, "wave-B")):
        c, reps = wave_convergence(fn, medium, base, cfg.levels, label)
        bundle.checks.append(_convergence_check(f"wave: {label}", c, reps[-1][label]))

    export = _grid(cfg, spec, medium, cfg.divisions)
    Es, Bs = sample(pair.E, export), sample(pair.B, export)
    bundle.details["grid_report"] = maxwell_residual(pair, medium, export).as_dict()
    if not cfg.fault:
        try:
            real = (real_fields_vacuum if isinstance(spec, PlaneWaveSpec) else real_fields_conductor)(spec, medium)
        except PolarizationError as exc:
            bundle.details["real_fields"] = f"skipped: {exc}"
        else:
            for name, fn, cs in (("E", real.E, Es), ("B", real.B, Bs)):
                diff = sample(fn, export).values - cs.values.real
                scale = max(float(np.max(norm(cs.values))), np.finfo(float).tiny)
                err = float(np.max(norm(diff))) / scale
                bundle.checks.append(Check(f"real part: {name}", err, err, ALGEBRAIC_RTOL,
                                           err <= ALGEBRAIC_RTOL, {"kind": "relative"}))
    if csv_path is not None:
        write_field_csv(csv_path, Es, Bs)
        bundle.details["csv"] = str(csv_path)
    return bundle


# ---------------------------------------------------------------- classical BTs


@dataclass
class ClassicalConfig:
    scenario: str = "sine-gordon"
    C: float = 1.0
    a: float = 2.0
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.0
    box: tuple = (-1.0, -1.0, 1.0, 1.0)
    n: int = 11
    h0: float = PDE_H0
    levels: int = 4


def _pde_check(name, residual_fn, field, X, T, h0, levels):
    steps = [h0 / 2**i for i in range(levels)]
    vals = [np.abs(residual_fn(field, X, T, h)) for h in steps]
    slope_scale = float(np.max(np.abs(field.fx(X, T))) + np.max(np.abs(field.ft(X, T))))
    floors = [1e3 * EPS * max(slope_scale, 1.0) / h for h in steps]
    conv = convergence_order([float(v.max()) for v in vals], steps, name, floor=floors)
    last = vals[-1]
    return Check(name, float(last.max()), float(np.sqrt(np.mean(last**2))), SLOPE_TOL,
                 conv.within(SLOPE_TARGET, SLOPE_TOL), {
                     "kind": "convergence",
                     "slope": "exact" if conv.exact else conv.slope,
                     "target_slope": SLOPE_TARGET,
                     "residuals": list(conv.residuals),
                     "steps": steps,
                 })


def _bt_check(name, r1, r2):
    mag = np.hypot(np.abs(r1), np.abs(r2))
    m = float(mag.max())
    return Check(name, m, float(np.sqrt(np.mean(mag**2))), BT_TOL, m < BT_TOL, {"kind": "absolute"})


def run_classical(cfg: ClassicalConfig) -> ReportBundle:
    x0, t0, x1, t1 = cfg.box
    X, T = np.meshgrid(np.linspace(x0, x1, cfg.n), np.linspace(t0, t1, cfg.n), indexing="ij")
    bundle = ReportBundle(cfg.scenario, dataclasses.asdict(cfg))
    checks = bundle.checks

    if cfg.scenario == "cauchy-riemann":
        p = cbt.laplace_conjugate_params(cfg.alpha, cfg.beta, cfg.gamma)
        bundle.details["conjugate_params"] = dataclasses.asdict(p)
        u, v = cbt.laplace_quadratic_pair(p)
        checks.append(_bt_check("bt: Cauchy-Riemann (quadratic family)", *cbt.cauchy_riemann_residual(u, v, X, T)))
        seed = cbt.HarmonicPoly.from_terms({(1, 1): 1.0})
        gen = cbt.integrate_cauchy_riemann(seed)
        bundle.details["generated_from_xy"] = {f"x^{i} y^{j}": c for (i, j), c in gen.terms().items()}
        checks.append(_bt_check("bt: Cauchy-Riemann (integrated from v = xy)",
                                *cbt.cauchy_riemann_residual(gen.as_field(), seed.as_field(), X, T)))
        for name, f in (("u", u), ("v", v)):
            checks.append(_pde_check(f"pde: Laplace {name}", cbt.laplace_residual, f, X, T, cfg.h0, cfg.levels))
    elif cfg.scenario == "liouville":
        u = cbt.liouville_solution(cfg.C)
        v = cbt.ZERO
        checks.append(_bt_check("bt: Liouville", *cbt.liouville_bt_residual(u, v, X, T)))
        checks.append(_pde_check("pde: Liouville u_xt = e^u", cbt.liouville_pde_residual, u, X, T,
                                 cfg.h0, cfg.levels))
        checks.append(_pde_check("pde: v_xt = 0", lambda f, x, t, h: cbt.mixed_partial(f, x, t, h),
                                 v, X, T, cfg.h0, cfg.levels))
    elif cfg.scenario == "sine-gordon":
        u = cbt.sine_gordon_kink(cfg.C, cfg.a)
        v = cbt.ZERO
        checks.append(_bt_check("bt: sine-Gordon", *cbt.sine_gordon_bt_residual(u, v, cfg.a, X, T)))
        for name, f in (("u", u), ("v", v)):
            checks.append(_pde_check(f"pde: sine-Gordon {name}", cbt.sine_gordon_pde_residual, f, X, T,
                                     cfg.h0, cfg.levels))
    else:
        raise ValueError(f"not a classical scenario: {cfg.scenario!r}")
    return bundle
