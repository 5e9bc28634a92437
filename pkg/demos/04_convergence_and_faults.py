"""Use the finite-difference checker to tell correct pairs from broken ones."""
# %%
import numpy as np

from btconjugate import (
    AttenuatedWaveSpec,
    GridSpec,
    Medium,
    PlaneWaveSpec,
    make_conjugate_conductor,
    make_conjugate_vacuum,
    maxwell_convergence,
    project_transverse,
    solve_dispersion,
    wave_convergence,
)
from btconjugate.faults import broken_pair
from btconjugate.vectors_grid import rvec

khat = rvec(1, 2, 3) / np.sqrt(14)
E0 = project_transverse([1.0, 0.3j, 0.0], khat)


def report(title, pair, medium, wavelength=2 * np.pi):
    base = GridSpec.centered([0.2, -0.1, 0.3], wavelength / 20, 9, 0.0, dt=2 * np.pi / 30)
    conv, reports = maxwell_convergence(pair, medium, base)
    for fn, label in ((pair.E, "wave-E"), (pair.B, "wave-B")):
        conv[label], _ = wave_convergence(fn, medium, base, label=label)
    print(title)
    for label, c in conv.items():
        slope = "exact" if c.exact else f"{c.slope:6.3f}"
        print(f"  {label:7s} slope {slope}   relative residuals {np.array(c.residuals)}")


np.set_printoptions(precision=2)

# %% [markdown]
# Correct pairs: every residual falls by a factor of four per halving.

# %%
vac = PlaneWaveSpec(E0, khat, 1.0)
report("vacuum pair", make_conjugate_vacuum(vac, Medium()), Medium())

cond_medium = Medium(1.0, 1.0, 2.0)
d = solve_dispersion(1.0, cond_medium)
cond = AttenuatedWaveSpec(E0, khat, 1.0, d)
report("conductor pair", make_conjugate_conductor(cond, cond_medium), cond_medium, 2 * np.pi / d.k)

# %% [markdown]
# Broken pairs: at least one residual stops shrinking.

# %%
report("B scaled by 2", broken_pair(vac, Medium(), "scale-B:2"), Medium())
report("k scaled by 1.1", broken_pair(vac, Medium(), "scale-k:1.1"), Medium())
report("attenuation dropped", broken_pair(cond, cond_medium, "zero-s"), cond_medium, 2 * np.pi / d.k)
