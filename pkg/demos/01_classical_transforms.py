"""Walk through three classical Backlund transforms and check them numerically.

Run with ``python3 demos/01_classical_transforms.py``.
"""
# %%
import numpy as np

from btconjugate import classical_bt as cbt

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(1)

# %% [markdown]
# Cauchy-Riemann: start from v = xy and integrate the system for u.
# The integrator works on polynomial coefficients, so the answer is exact.

# %%
v = cbt.HarmonicPoly.from_terms({(1, 1): 1.0})
u = cbt.integrate_cauchy_riemann(v)
print("v = xy  ->  u terms:", u.terms())

x, y = rng.uniform(-2, 2, (2, 5))
r1, r2 = cbt.cauchy_riemann_residual(u.as_field(), v.as_field(), x, y)
print("residuals at 5 random points:", np.hypot(r1, r2))

# %% [markdown]
# The quadratic family alpha (x^2 - y^2) + beta x + gamma y pairs with
# kappa xy + lambda x + mu y only for one choice of (kappa, lambda, mu).

# %%
p = cbt.laplace_conjugate_params(1.5, -0.5, 2.0)
print("conjugate parameters:", p)
uq, vq = cbt.laplace_quadratic_pair(p)
print("max residual:", np.max(np.hypot(*cbt.cauchy_riemann_residual(uq, vq, x, y))))

xy = cbt.HarmonicPoly.from_terms({(1, 1): 1.0}).as_field()
print("u = v = xy at (1, 1):", cbt.cauchy_riemann_residual(xy, xy, 1.0, 1.0), "(not a pair)")

# %% [markdown]
# Liouville: the trivial solution v = 0 of the wave equation generates
# u = -2 ln(C - (x + t)/sqrt 2). Check the transform, then the PDE it implies.

# %%
ul = cbt.liouville_solution(2.0)
x, t = rng.uniform(-1, 1, (2, 200))
print("u(0, 0) =", ul(0.0, 0.0))
print("BT residual max:", np.max(np.abs(cbt.liouville_bt_residual(ul, cbt.ZERO, x, t))))
for h in (1e-2, 5e-3, 2.5e-3, 1.25e-3):
    print(f"  h = {h:.2e}  max |u_xt - e^u| = {np.max(np.abs(cbt.liouville_pde_residual(ul, x, t, h))):.3e}")

try:
    ul(2.0, 1.0)
except cbt.DomainError as exc:
    print("outside the domain:", exc)

# %% [markdown]
# sine-Gordon: the same trick with v = 0 produces the kink 4 arctan(C e^{ax + t/a}).

# %%
for a in (1.0, 2.0):
    kink = cbt.sine_gordon_kink(1.0, a)
    bt = np.max(np.hypot(*cbt.sine_gordon_bt_residual(kink, cbt.ZERO, a, x, t)))
    pde = np.max(np.abs(cbt.sine_gordon_pde_residual(kink, x, t, 1e-3)))
    print(f"a = {a}: BT residual {bt:.1e}, PDE residual with h = 1e-3: {pde:.1e}")
