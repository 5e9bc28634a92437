"""Damped conjugate waves in an Ohmic conductor."""
# %%
import numpy as np

from btconjugate import (
    AttenuatedWaveSpec,
    Medium,
    make_conjugate_conductor,
    real_fields_conductor,
    solve_dispersion,
)
from btconjugate.vectors_grid import cvec, norm, rvec

# %% [markdown]
# With eps = mu = omega = 1 and sigma = 2 the wavenumber satisfies k^4 = k^2 + 1,
# so k^2 is the golden ratio.

# %%
medium = Medium(1.0, 1.0, 2.0)
d = solve_dispersion(1.0, medium)
print(f"k = {d.k:.10f}  s = {d.s:.10f}  phi = {d.phi:.10f}")
print("k^2 =", d.k**2, " golden ratio =", (1 + np.sqrt(5)) / 2)
print("(k + i s)^2 =", d.K**2)

# %% [markdown]
# Sweep the conductivity: the lag angle climbs from 0 towards pi/4.

# %%
for sigma in (1e-6, 1e-2, 1.0, 1e2, 1e6):
    dd = solve_dispersion(1.0, Medium(1.0, 1.0, sigma))
    print(f"  sigma = {sigma:8.0e}  k = {dd.k:10.4f}  s = {dd.s:10.4f}  phi/(pi/4) = {dd.phi / (np.pi / 4):.6f}")

# %% [markdown]
# The pair decays along tau and B carries the factor (k + i s)/omega.

# %%
spec = AttenuatedWaveSpec(cvec(1, 0, 0), rvec(0, 0, 1), 1.0, d)
pair = make_conjugate_conductor(spec, medium)
print("|B(0, 0)| =", norm(pair.B(rvec(), 0.0)))
for z in (0.0, 1.0, 2.0):
    print(f"  |E| at z = {z}: {norm(pair.E(rvec(0, 0, z), 0.0)):.6f}   e^(-s z) = {np.exp(-d.s * z):.6f}")

# %% [markdown]
# In the real fields B trails E in time by phi/omega.

# %%
real = real_fields_conductor(spec, medium)
t = np.linspace(0, 2 * np.pi, 100001)
r = np.zeros((t.size, 3))
e = real.E(r, t)[:, 0]
b = real.B(r, t)[:, 1]


def first_zero(f):
    i = np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0][0]
    return t[i] - f[i] * (t[i + 1] - t[i]) / (f[i + 1] - f[i])


print("measured lag:", first_zero(b) - first_zero(e), " phi/omega:", d.phi / d.omega)
