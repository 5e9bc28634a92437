import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq, root

from btconjugate.maxwell_conductor import (
    AttenuatedWaveSpec,
    DispersionMismatchError,
    conductor_amplitude_check,
    dispersion_residuals,
    make_conjugate_conductor,
    real_fields_conductor,
    solve_dispersion,
)
from btconjugate.maxwell_vacuum import (
    Medium,
    PlaneWaveSpec,
    PolarizationError,
    TransversalityError,
    make_conjugate_vacuum,
    project_transverse,
)
from btconjugate.residual_checker import maxwell_convergence, wave_convergence
from btconjugate.vectors_grid import GridSpec, cross, cvec, norm, rvec

GOLDEN = (1 + np.sqrt(5)) / 2
OBLIQUE = rvec(1, 2, 3) / np.sqrt(14)
rng = np.random.default_rng(11)

decade4 = st.floats(-2, 2)


def golden():
    return solve_dispersion(1.0, Medium(1.0, 1.0, 2.0))


# ---------------------------------------------------------------- dispersion


def test_golden_ratio_case():
    d = golden()
    assert d.k**2 == pytest.approx(GOLDEN, rel=1e-14)
    assert d.k == pytest.approx(1.2720196, abs=1e-7)
    assert d.s == pytest.approx(0.7861514, abs=1e-7)
    assert d.phi == pytest.approx(0.5535744, abs=1e-7)
    assert d.s == pytest.approx(1 / d.k, rel=1e-15)
    assert d.s**2 - d.k**2 + 1 == pytest.approx(0, abs=1e-15)
    assert 2 * d.s * d.k == pytest.approx(2, rel=1e-15)


def test_golden_complex_wavenumber_square():
    K = golden().K
    assert K**2 == pytest.approx(1 + 2j, rel=1e-14)


def test_sigma_zero_reduces_to_vacuum():
    d = solve_dispersion(2.0, Medium(3.0, 0.5, 0.0))
    assert d.s == 0 and d.phi == 0
    assert d.k == pytest.approx(2.0 * np.sqrt(1.5), rel=1e-15)
    assert d.phase_speed == pytest.approx(1 / np.sqrt(1.5), rel=1e-15)


def test_solve_rejects_nonpositive_omega():
    with pytest.raises(ValueError):
        solve_dispersion(0.0, Medium())
    with pytest.raises(ValueError):
        solve_dispersion(-1.0, Medium(sigma=1))


@pytest.mark.parametrize("sigma", [1e-12, 1e-9, 1e-6])
def test_vacuum_continuity(sigma):
    eps, mu, omega = 2.0, 0.5, 3.0
    d = solve_dispersion(omega, Medium(eps, mu, sigma))
    k0 = omega * np.sqrt(eps * mu)
    # leading-order corrections: s ~ (sigma/2) sqrt(mu/eps), k - k0 = O(sigma^2)
    assert d.s == pytest.approx(sigma / 2 * np.sqrt(mu / eps), rel=1e-6)
    assert abs(d.k - k0) <= 10 * sigma**2 + 1e-15 * k0
    assert d.phi <= 10 * sigma


def test_good_conductor_limit():
    d = solve_dispersion(1.0, Medium(1.0, 1.0, 1e6))
    assert abs(d.phi - np.pi / 4) < 1e-5
    assert d.s / d.k == pytest.approx(1.0, abs=1e-5)


@settings(max_examples=200, deadline=None)
@given(decade4, decade4, decade4, decade4)
def test_dispersion_closure_over_four_decades(lw, le, lm, ls):
    omega, eps, mu, sigma = 10.0**lw, 10.0**le, 10.0**lm, 10.0**ls
    d = solve_dispersion(omega, Medium(eps, mu, sigma))
    r1, r2 = dispersion_residuals(d.k, d.s, omega, Medium(eps, mu, sigma))
    assert r1 < 1e-12 and r2 < 1e-12
    assert d.k > 0 and d.s >= 0
    assert 0 <= d.phi < np.pi / 4 + 1e-15
    assert np.tan(d.phi) == pytest.approx(d.s / d.k, rel=1e-14)


def newton_dispersion(omega, eps, mu, sigma, iters=100):
    """Plain Newton iteration on the two real equations, started from the lossless root."""
    k = omega * np.sqrt(eps * mu)
    s = mu * sigma * omega / (2 * k)
    for _ in range(iters):
        F = np.array([s**2 - k**2 + eps * mu * omega**2, mu * sigma * omega - 2 * s * k])
        J = np.array([[-2 * k, 2 * s], [-2 * s, -2 * k]])
        dk, ds = np.linalg.solve(J, -F)
        k, s = k + dk, s + ds
        if abs(dk) <= 1e-16 * abs(k) and abs(ds) <= 1e-16 * max(abs(s), abs(k)):
            break
    return k, s


@settings(max_examples=100, deadline=None)
@given(decade4, decade4, decade4, decade4)
def test_matches_newton_iteration(lw, le, lm, ls):
    omega, eps, mu, sigma = 10.0**lw, 10.0**le, 10.0**lm, 10.0**ls
    d = solve_dispersion(omega, Medium(eps, mu, sigma))
    k, s = newton_dispersion(omega, eps, mu, sigma)
    scale = abs(d.K)
    assert k == pytest.approx(d.k, rel=1e-12)
    assert s == pytest.approx(d.s, rel=1e-12, abs=1e-14 * scale)


@pytest.mark.parametrize("omega,eps,mu,sigma", [(1, 1, 1, 2), (3.0, 0.2, 5.0, 0.01), (0.5, 1.0, 1.0, 80.0)])
def test_matches_scipy_root(omega, eps, mu, sigma):
    d = solve_dispersion(omega, Medium(eps, mu, sigma))

    def system(v):
        k, s = v
        return [s**2 - k**2 + eps * mu * omega**2, mu * sigma * omega - 2 * s * k]

    sol = root(system, [d.k * 1.2, d.s * 0.8], method="lm", options={"xtol": 1e-15, "ftol": 1e-15})
    np.testing.assert_allclose(sol.x, [d.k, d.s], rtol=1e-10)


def test_matches_bracketed_biquadratic_root():
    omega, eps, mu, sigma = 2.0, 0.3, 4.0, 5.0
    d = solve_dispersion(omega, Medium(eps, mu, sigma))
    q = lambda k: k**4 - eps * mu * omega**2 * k**2 - (mu * sigma * omega) ** 2 / 4
    k = brentq(q, 1e-6, 1e3, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    assert k == pytest.approx(d.k, rel=1e-13)


def test_s_increases_with_sigma():
    sig = np.logspace(-6, 6, 200)
    s = np.array([solve_dispersion(1.3, Medium(0.7, 2.0, x)).s for x in sig])
    assert np.all(np.diff(s) > 0)


# ---------------------------------------------------------------- constructor


def golden_spec(E0=cvec(1, 0, 0), tau=rvec(0, 0, 1), alpha=0.0):
    return AttenuatedWaveSpec(E0, tau, 1.0, golden(), alpha)


def test_b_magnitude_at_origin():
    pair = make_conjugate_conductor(golden_spec(), Medium(1, 1, 2))
    assert norm(pair.B(rvec(), 0.0)) == pytest.approx(1.4953488, abs=1e-7)
    assert norm(pair.B(rvec(), 0.0)) == pytest.approx(np.sqrt(GOLDEN + 1 / GOLDEN), rel=1e-14)


def test_zero_sigma_matches_vacuum_pair():
    E0 = project_transverse(cvec(1, 1j, 0.5), OBLIQUE)
    medium = Medium(2.0, 1.5, 0.0)
    c = make_conjugate_conductor(AttenuatedWaveSpec(E0, OBLIQUE, 1.2, solve_dispersion(1.2, medium)), medium)
    v = make_conjugate_vacuum(PlaneWaveSpec(E0, OBLIQUE, 1.2), medium)
    r, t = rng.uniform(-3, 3, (20, 3)), rng.uniform(-3, 3, 20)
    np.testing.assert_allclose(c.E(r, t), v.E(r, t), rtol=1e-13, atol=1e-14)
    np.testing.assert_allclose(c.B(r, t), v.B(r, t), rtol=1e-13, atol=1e-14)


def test_amplitude_decay_along_tau():
    medium = Medium(1, 1, 2)
    pair = make_conjugate_conductor(golden_spec(project_transverse(cvec(1, 0, 0), OBLIQUE), OBLIQUE), medium)
    s = golden().s
    r, t = rng.uniform(-2, 2, (50, 3)), rng.uniform(-2, 2, 50)
    for d in (0.5, 1.0, 3.0):
        ratio = norm(pair.E(r + d * OBLIQUE, t)) / norm(pair.E(r, t))
        np.testing.assert_allclose(ratio, np.exp(-s * d), rtol=1e-12)


def test_non_transverse_rejected():
    with pytest.raises(TransversalityError):
        make_conjugate_conductor(golden_spec(cvec(0, 0, 1)), Medium(1, 1, 2))


def test_inconsistent_dispersion_rejected():
    spec = golden_spec()
    with pytest.raises(DispersionMismatchError, match="relative residuals"):
        make_conjugate_conductor(spec, Medium(1, 1, 3))


# ---------------------------------------------------------------- amplitude relations


def test_amplitude_check_for_constructed_pair():
    medium = Medium(1, 1, 2)
    spec = golden_spec(project_transverse(cvec(1, 2j, 0.5), OBLIQUE), OBLIQUE)
    p = make_conjugate_conductor(spec, medium).provenance
    rep = conductor_amplitude_check(p["E0"], p["B0"], OBLIQUE, golden(), medium)
    assert rep.passes()


def test_amplitude_check_zero():
    rep = conductor_amplitude_check(cvec(), cvec(), rvec(0, 0, 1), golden(), Medium(1, 1, 2))
    assert rep.residuals == (0.0, 0.0, 0.0, 0.0)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_fourth_relation_redundant_in_conductor(seed):
    g = np.random.default_rng(seed)
    tau = g.normal(size=3)
    tau /= norm(tau)
    E0 = project_transverse(g.normal(size=3) + 1j * g.normal(size=3), tau)
    medium = Medium(*np.exp(g.uniform(-2, 2, 3)))
    omega = float(np.exp(g.uniform(-2, 2)))
    d = solve_dispersion(omega, medium)
    B0 = d.K / omega * cross(tau, E0)
    rep = conductor_amplitude_check(E0, B0, tau, d, medium)
    assert rep.redundant
    assert rep.fourth_derived <= 1e-12 * rep.scales[3]
    assert rep.residuals[3] <= 1e-12 * rep.scales[3]


# ---------------------------------------------------------------- real fields


def test_real_fields_match_real_part():
    medium = Medium(1, 1, 2)
    E0R = project_transverse(rng.normal(size=3), OBLIQUE).real
    spec = golden_spec(E0R, OBLIQUE, alpha=0.9)
    pair = make_conjugate_conductor(spec, medium)
    real = real_fields_conductor(spec, medium)
    r, t = rng.uniform(-2, 2, (100, 3)), rng.uniform(-5, 5, 100)
    for fc, fr in ((pair.E, real.E), (pair.B, real.B)):
        c = fc(r, t)
        np.testing.assert_allclose(fr(r, t), c.real, rtol=0, atol=1e-12 * np.max(norm(c)))


def test_real_fields_zero_sigma_in_phase():
    medium = Medium()
    spec = AttenuatedWaveSpec(rvec(1, 0, 0), rvec(0, 0, 1), 1.0, solve_dispersion(1.0, medium))
    real = real_fields_conductor(spec, medium)
    assert real.provenance["phi"] == 0
    t = np.linspace(0, 10, 101)
    r = np.zeros((101, 3))
    np.testing.assert_allclose(real.E(r, t)[:, 0], real.B(r, t)[:, 1], atol=1e-15)


def test_real_fields_reject_elliptical():
    with pytest.raises(PolarizationError):
        real_fields_conductor(golden_spec(cvec(1, 1j, 0)), Medium(1, 1, 2))


def test_real_fields_zero_crossing_lag():
    medium = Medium(1, 1, 2)
    d = golden()
    real = real_fields_conductor(golden_spec(), medium)
    t = np.linspace(0, 4 * np.pi, 200001)
    r = np.zeros((t.size, 3))
    e = real.E(r, t)[:, 0]
    b = real.B(r, t)[:, 1]

    def crossings(f):
        i = np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0]
        return t[i] - f[i] * (t[i + 1] - t[i]) / (f[i + 1] - f[i])

    ze, zb = crossings(e), crossings(b)
    # B carries the extra phase +phi in cos(k.r - w t + alpha + phi), so at
    # fixed r it reaches each zero phi/omega later than E
    lag = zb[None, :] - ze[:, None]
    lags = lag[(lag > 0) & (lag < np.pi)]
    assert np.max(np.abs(lags - d.phi / d.omega)) < 1e-6


# ---------------------------------------------------------------- finite-difference membership


def test_conductor_pair_converges():
    medium = Medium(1, 1, 2)
    spec = golden_spec(project_transverse(cvec(1, 0.3j, 0), OBLIQUE), OBLIQUE)
    pair = make_conjugate_conductor(spec, medium)
    lam = 2 * np.pi / golden().k
    base = GridSpec.centered([0.1, 0.2, -0.1], lam / 20, 9, 0.0, dt=2 * np.pi / 30)
    conv, _ = maxwell_convergence(pair, medium, base)
    for label, c in conv.items():
        assert c.within(2.0, 0.1, allow_exact=False), (label, c.slope)
    for fn in (pair.E, pair.B):
        c, _ = wave_convergence(fn, medium, base)
        assert c.within(2.0, 0.1, allow_exact=False)
