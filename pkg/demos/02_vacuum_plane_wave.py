"""Build a conjugate (E, B) plane wave in a lossless medium and inspect it."""
# %%
import numpy as np

from btconjugate import (
    GridSpec,
    Medium,
    PlaneWaveSpec,
    amplitude_relations_check,
    make_conjugate_vacuum,
    maxwell_residual,
    project_transverse,
    real_fields_vacuum,
)
from btconjugate.maxwell_vacuum import TransversalityError
from btconjugate.vectors_grid import norm, rvec

np.set_printoptions(precision=5, suppress=True)

# %% [markdown]
# A wave travelling along an oblique direction. The amplitude has to be
# transverse; a longitudinal part is rejected rather than silently dropped.

# %%
khat = rvec(1, 2, 3) / np.sqrt(14)
medium = Medium(eps=2.0, mu=1.0)
try:
    make_conjugate_vacuum(PlaneWaveSpec([1, 0, 0], khat, 1.0), medium)
except TransversalityError as exc:
    print("rejected:", exc)

E0 = project_transverse([1, 0, 0], khat)
spec = PlaneWaveSpec(E0, khat, omega=1.0, alpha=0.4)
pair = make_conjugate_vacuum(spec, medium)
print("k =", pair.provenance["k"], " c =", medium.speed)
print("E0 =", pair.provenance["E0"])
print("B0 =", pair.provenance["B0"])

# %% [markdown]
# The amplitudes satisfy all four algebraic relations, and |B| = |E|/c everywhere.

# %%
p = pair.provenance
rep = amplitude_relations_check(p["E0"], p["B0"], p["k"] * khat, spec.omega, medium)
for name, r in rep.as_dict().items():
    print(f"  {name:24s} {r:.2e}")
r = np.random.default_rng(0).uniform(-5, 5, (4, 3))
t = np.linspace(0, 3, 4)
print("|B| c / |E| =", norm(pair.B(r, t)) * medium.speed / norm(pair.E(r, t)))

# %% [markdown]
# The real fields oscillate in phase and match the real part of the complex pair.

# %%
real = real_fields_vacuum(spec, medium)
print("max |Re E - E_real| =", np.max(np.abs(pair.E(r, t).real - real.E(r, t))))

# %% [markdown]
# Finite-difference residuals of the Maxwell system on a 9^4 grid, one wavelength across.

# %%
lam = 2 * np.pi / p["k"]
grid = GridSpec.centered([0, 0, 0], lam / 8, 9, 0.0, dt=2 * np.pi / 12)
for e in maxwell_residual(pair, medium, grid).entries:
    print(f"  {e.label:7s} max {e.max:.3e}  rms {e.rms:.3e}")
