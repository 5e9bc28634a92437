"""Classical Backlund transformations in two variables.

Covers the Cauchy-Riemann auto-BT of the Laplace equation, the
Liouville/free-wave BT and the sine-Gordon auto-BT, with the closed-form
solutions each produces from a trivial seed. All field callables are
vectorized over numpy arrays of ``x`` and ``t`` (``t`` plays the role of
``y`` for the Laplace problems).

Residuals are left side minus right side of each equation, in the order the
equations are usually printed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "DomainError",
    "NotHarmonicError",
    "ScalarField2D",
    "HarmonicPoly",
    "LaplaceQuadParams",
    "mixed_partial",
    "cauchy_riemann_residual",
    "integrate_cauchy_riemann",
    "laplace_conjugate_params",
    "laplace_quadratic_pair",
    "laplace_residual",
    "liouville_solution",
    "liouville_bt_residual",
    "liouville_pde_residual",
    "sine_gordon_kink",
    "sine_gordon_bt_residual",
    "sine_gordon_pde_residual",
    "constant_field",
    "ZERO",
]

SQRT2 = np.sqrt(2.0)
DEFAULT_H = 1e-4
DEFAULT_DEGREE = 8

Fn2 = Callable[[np.ndarray, np.ndarray], np.ndarray]


class DomainError(ValueError):
    pass


class NotHarmonicError(ValueError):
    pass


@dataclass(frozen=True)
class ScalarField2D:
    """A real function of two variables with its exact first partials.

    ``fxt`` is an optional exact mixed partial; when absent the mixed partial
    is obtained by central-differencing ``ft`` in ``x``.
    """

    f: Fn2
    fx: Fn2
    ft: Fn2
    fxt: Optional[Fn2] = None
    name: str = ""

    def __call__(self, x, t):
        return self.f(x, t)


def _zero(x, t):
    return np.zeros(np.broadcast(np.asarray(x), np.asarray(t)).shape)


ZERO = ScalarField2D(_zero, _zero, _zero, _zero, name="0")


def mixed_partial(u: ScalarField2D, x, t, h: float = DEFAULT_H):
    """``u_xt`` at ``(x, t)``: exact if supplied, else ``(u_t(x+h) - u_t(x-h)) / 2h``."""
    if u.fxt is not None:
        return u.fxt(x, t)
    return (u.ft(x + h, t) - u.ft(x - h, t)) / (2 * h)


# ---------------------------------------------------------------- Laplace


def cauchy_riemann_residual(u: ScalarField2D, v: ScalarField2D, x, y):
    """``(u_x - v_y, u_y + v_x)``."""
    return u.fx(x, y) - v.ft(x, y), u.ft(x, y) + v.fx(x, y)


@dataclass(frozen=True)
class HarmonicPoly:
    """Bivariate polynomial ``sum c[i, j] x**i y**j`` of total degree at most ``degree``.

    Harmonicity is checked by :meth:`is_harmonic`, not enforced on
    construction, so non-harmonic inputs can be represented and rejected.
    """

    coeffs: np.ndarray
    degree: int = DEFAULT_DEGREE

    def __post_init__(self):
        c = np.zeros((self.degree + 1, self.degree + 1))
        given = np.asarray(self.coeffs, dtype=float)
        if given.ndim != 2:
            raise ValueError("coefficients must be a 2-D array c[i, j] for x**i y**j")
        ni, nj = given.shape
        for i in range(ni):
            for j in range(nj):
                if given[i, j] != 0.0:
                    if i + j > self.degree:
                        raise ValueError(f"term x^{i} y^{j} exceeds degree cap {self.degree}")
                    c[i, j] = given[i, j]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_terms(cls, terms: dict, degree: int = DEFAULT_DEGREE) -> "HarmonicPoly":
        """Build from ``{(i, j): coefficient}``."""
        c = np.zeros((degree + 1, degree + 1))
        for (i, j), a in terms.items():
            if i + j > degree:
                raise ValueError(f"term x^{i} y^{j} exceeds degree cap {degree}")
            c[i, j] += a
        return cls(c, degree)

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs), initial=0.0))

    def terms(self) -> dict:
        return {(int(i), int(j)): float(self.coeffs[i, j]) for i, j in zip(*np.nonzero(self.coeffs))}

    def __call__(self, x, y):
        return np.polynomial.polynomial.polyval2d(x, y, self.coeffs)

    def dx(self) -> "HarmonicPoly":
        c = np.zeros_like(self.coeffs)
        n = self.degree
        c[:n, :] = self.coeffs[1:, :] * np.arange(1, n + 1)[:, None]
        return HarmonicPoly(c, self.degree)

    def dy(self) -> "HarmonicPoly":
        c = np.zeros_like(self.coeffs)
        n = self.degree
        c[:, :n] = self.coeffs[:, 1:] * np.arange(1, n + 1)[None, :]
        return HarmonicPoly(c, self.degree)

    def laplacian_coeffs(self) -> np.ndarray:
        return self.dx().dx().coeffs + self.dy().dy().coeffs

    def is_harmonic(self, rtol: float = 1e-12) -> bool:
        lap = self.laplacian_coeffs()
        return bool(np.all(np.abs(lap) <= rtol * max(self.scale, 1.0)))

    def as_field(self) -> ScalarField2D:
        px, py = self.dx(), self.dy()
        pxy = px.dy()
        return ScalarField2D(self, px, py, pxy, name=f"poly{self.terms()}")


def _integrate_x(p: HarmonicPoly) -> np.ndarray:
    c = np.zeros_like(p.coeffs)
    n = p.degree
    c[1:, :] = p.coeffs[:n, :] / np.arange(1, n + 1)[:, None]
    return c


def _integrate_y(p: HarmonicPoly) -> np.ndarray:
    c = np.zeros_like(p.coeffs)
    n = p.degree
    c[:, 1:] = p.coeffs[:, :n] / np.arange(1, n + 1)[None, :]
    return c


def integrate_cauchy_riemann(v: HarmonicPoly, rtol: float = 1e-12) -> HarmonicPoly:
    """Harmonic conjugate ``u`` with ``u_x = v_y``, ``u_y = -v_x`` and ``u(0, 0) = 0``.

    Integrates ``v_y`` in ``x``, then recovers the missing ``y``-only part
    from the second relation. Raises :class:`NotHarmonicError` when the
    Laplacian of ``v`` has a nonzero coefficient.
    """
    lap = v.laplacian_coeffs()
    bad = np.abs(lap) > rtol * max(v.scale, 1.0)
    if np.any(bad):
        i, j = (int(a) for a in np.argwhere(bad)[0])
        raise NotHarmonicError(
            f"v is not harmonic: Laplacian has coefficient {lap[i, j]:g} on x^{i} y^{j}"
        )
    partial = HarmonicPoly(_integrate_x(v.dy()), v.degree)
    # -v_x - d/dy(partial) depends on y alone once v is harmonic
    rest = -v.dx().coeffs - partial.dy().coeffs
    rest[1:, :] = 0.0
    u = partial.coeffs + _integrate_y(HarmonicPoly(rest, v.degree))
    u[0, 0] = 0.0
    return HarmonicPoly(u, v.degree)


@dataclass(frozen=True)
class LaplaceQuadParams:
    """``u = alpha (x^2 - y^2) + beta x + gamma y`` and ``v = kappa x y + lam x + mu y``."""

    alpha: float
    beta: float
    gamma: float
    kappa: float
    lam: float
    mu: float


def laplace_conjugate_params(alpha: float, beta: float, gamma: float) -> LaplaceQuadParams:
    return LaplaceQuadParams(alpha, beta, gamma, 2 * alpha, -gamma, beta)


def laplace_quadratic_pair(p: LaplaceQuadParams) -> tuple[ScalarField2D, ScalarField2D]:
    u = HarmonicPoly.from_terms({(2, 0): p.alpha, (0, 2): -p.alpha, (1, 0): p.beta, (0, 1): p.gamma})
    v = HarmonicPoly.from_terms({(1, 1): p.kappa, (1, 0): p.lam, (0, 1): p.mu})
    return u.as_field(), v.as_field()


def laplace_residual(u: ScalarField2D, x, y, h: float = DEFAULT_H):
    """``u_xx + u_yy`` by central-differencing the exact first partials."""
    uxx = (u.fx(x + h, y) - u.fx(x - h, y)) / (2 * h)
    uyy = (u.ft(x, y + h) - u.ft(x, y - h)) / (2 * h)
    return uxx + uyy


# ---------------------------------------------------------------- Liouville


def liouville_solution(C: float) -> ScalarField2D:
    """``u = -2 ln(C - (x + t)/sqrt 2)``, the image of ``v = 0`` under the BT.

    Defined only where ``C - (x + t)/sqrt 2 > 0``; evaluating elsewhere
    raises :class:`DomainError`.
    """

    def arg(x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        a = C - (x + t) / SQRT2
        bad = ~(a > 0)
        if bad.any():
            k = tuple(np.argwhere(bad)[0])
            raise DomainError(
                f"Liouville solution with C={C} is undefined at (x, t)=({x[k]}, {t[k]}): "
                f"C - (x+t)/sqrt(2) = {a[k]} is not positive"
            )
        return a

    def f(x, t):
        return -2.0 * np.log(arg(x, t))

    def fx(x, t):
        return SQRT2 / arg(x, t)

    return ScalarField2D(f, fx, fx, name=f"liouville(C={C})")


def liouville_bt_residual(u: ScalarField2D, v: ScalarField2D, x, t):
    """``u_x + v_x - sqrt2 e^{(u-v)/2}`` and ``u_t - v_t - sqrt2 e^{(u+v)/2}``."""
    uu, vv = u.f(x, t), v.f(x, t)
    r1 = u.fx(x, t) + v.fx(x, t) - SQRT2 * np.exp((uu - vv) / 2)
    r2 = u.ft(x, t) - v.ft(x, t) - SQRT2 * np.exp((uu + vv) / 2)
    return r1, r2


def liouville_pde_residual(u: ScalarField2D, x, t, h: float = DEFAULT_H):
    return mixed_partial(u, x, t, h) - np.exp(u.f(x, t))


# ---------------------------------------------------------------- sine-Gordon


def _check_a(a):
    if a == 0:
        raise ValueError("sine-Gordon BT parameter a must be nonzero")


def sine_gordon_kink(C: float, a: float) -> ScalarField2D:
    """``u = 4 arctan(C exp(a x + t / a))``."""
    _check_a(a)

    def e(x, t):
        return C * np.exp(a * np.asarray(x) + np.asarray(t) / a)

    def f(x, t):
        return 4.0 * np.arctan(e(x, t))

    def fx(x, t):
        ce = e(x, t)
        return 4.0 * a * ce / (1.0 + ce**2)

    def ft(x, t):
        ce = e(x, t)
        return 4.0 * ce / (a * (1.0 + ce**2))

    return ScalarField2D(f, fx, ft, name=f"kink(C={C}, a={a})")


def sine_gordon_bt_residual(u: ScalarField2D, v: ScalarField2D, a: float, x, t):
    """``(u+v)_x/2 - a sin((u-v)/2)`` and ``(u-v)_t/2 - sin((u+v)/2)/a``."""
    _check_a(a)
    uu, vv = u.f(x, t), v.f(x, t)
    r1 = (u.fx(x, t) + v.fx(x, t)) / 2 - a * np.sin((uu - vv) / 2)
    r2 = (u.ft(x, t) - v.ft(x, t)) / 2 - np.sin((uu + vv) / 2) / a
    return r1, r2


def sine_gordon_pde_residual(u: ScalarField2D, x, t, h: float = DEFAULT_H):
    return mixed_partial(u, x, t, h) - np.sin(u.f(x, t))


def constant_field(value: float) -> ScalarField2D:
    def f(x, t):
        return np.full(np.broadcast(np.asarray(x), np.asarray(t)).shape, float(value))

    return ScalarField2D(f, _zero, _zero, _zero, name=f"const({value})")
