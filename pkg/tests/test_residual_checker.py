import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from btconjugate.faults import broken_pair
from btconjugate.maxwell_conductor import AttenuatedWaveSpec, solve_dispersion
from btconjugate.maxwell_vacuum import (
    EMFieldPair,
    Medium,
    PlaneWaveSpec,
    make_conjugate_vacuum,
    plane_wave,
    project_transverse,
)
from btconjugate.residual_checker import (
    MAXWELL_LABELS,
    convergence_order,
    div_curl,
    maxwell_convergence,
    maxwell_residual,
    refinement_grids,
    wave_convergence,
    wave_residual,
)
from btconjugate.vectors_grid import GridError, GridSpec, cvec, norm, rvec, sample

OBLIQUE = rvec(1, 2, 3) / np.sqrt(14)
LAM = 2 * np.pi


def base_grid(center=(0.2, -0.1, 0.3)):
    return GridSpec.centered(center, LAM / 20, 9, 0.1, dt=LAM / 30)


def zero(r, t):
    return np.zeros(np.shape(r), dtype=complex)


def vacuum_pair(omega=1.0):
    spec = PlaneWaveSpec(project_transverse(cvec(1, 0.5j, 0), OBLIQUE), OBLIQUE, omega)
    return spec, make_conjugate_vacuum(spec, Medium())


def test_zero_fields_give_exact_zero():
    rep = maxwell_residual(EMFieldPair(zero, zero), Medium(), base_grid())
    assert rep.labels == MAXWELL_LABELS
    for e in rep.entries:
        assert e.max == 0 and e.rms == 0
    w = wave_residual(zero, Medium(sigma=1.0), base_grid())
    assert w["wave"].max == 0


def test_report_invariants():
    _, pair = vacuum_pair()
    g = base_grid()
    rep = maxwell_residual(pair, Medium(), g)
    assert rep.nodes == 7**4
    np.testing.assert_allclose(rep.spacing, g.spacing)
    for e in rep.entries:
        assert 0 <= e.rms <= e.max
    d = rep.as_dict()
    assert set(d["residuals"]) == set(MAXWELL_LABELS)


def test_grids_below_minimum_are_rejected():
    with pytest.raises(GridError, match="at least 5"):
        GridSpec([0, 0, 0], [1, 1, 1], (3, 3, 3), 0, 1, 3)


def test_vacuum_residuals_quarter_on_halving():
    _, pair = vacuum_pair()
    r1, r2 = (maxwell_residual(pair, Medium(), g) for g in refinement_grids(base_grid(), 2))
    for label in MAXWELL_LABELS:
        ratio = r1[label].max / r2[label].max
        assert ratio == pytest.approx(4.0, rel=0.05), label


def test_scaled_b_residual_stays_bounded_away():
    spec, _ = vacuum_pair()
    pair = broken_pair(spec, Medium(), "scale-B:2")
    conv, reports = maxwell_convergence(pair, Medium(), base_grid())
    # dB/dt is off by omega |B0|; the mismatch does not shrink with h
    finest = reports[-1]["curl-E"].max
    assert finest == pytest.approx(spec.omega * norm(pair.provenance["B0"]) / 2, rel=0.01)
    assert abs(conv["curl-E"].slope) < 0.1
    assert conv["div-E"].within()


def test_wrong_k_wave_residual_limit():
    spec, _ = vacuum_pair()
    medium = Medium()
    k = 1.1 * spec.omega
    E0 = spec.amplitude
    fn = plane_wave(E0, OBLIQUE, k, spec.omega)
    reports = [wave_residual(fn, medium, g) for g in refinement_grids(base_grid(), 4)]
    expected = abs(k**2 - spec.omega**2) * norm(E0)
    assert reports[-1]["wave"].max == pytest.approx(expected, rel=1e-3)
    assert reports[0]["wave"].max == pytest.approx(expected, rel=0.05)


def test_attenuated_wave_residual_converges():
    medium = Medium(1, 1, 2)
    d = solve_dispersion(1.0, medium)
    spec = AttenuatedWaveSpec(project_transverse(cvec(1, 0, 0), OBLIQUE), OBLIQUE, 1.0, d)
    fn = plane_wave(spec.amplitude, OBLIQUE, d.k, 1.0, d.s)
    conv, _ = wave_convergence(fn, medium, base_grid())
    assert conv.within(2.0, 0.1, allow_exact=False)


def test_convergence_from_callable():
    rep = convergence_order(lambda h: 3 * h**2, [0.1, 0.05, 0.025, 0.0125], "quad")
    assert rep.slope == pytest.approx(2.0, abs=1e-12)
    assert rep.fit_residual < 1e-12 and rep.monotone


def test_convergence_exact_marker():
    rep = convergence_order([0.0, 0.0, 0.0], [0.1, 0.05, 0.025])
    assert rep.exact and rep.slope is None
    assert rep.as_dict()["slope"] == "exact"
    assert rep.within() and not rep.within(allow_exact=False)


def test_zero_field_maxwell_convergence_is_exact():
    conv, _ = maxwell_convergence(EMFieldPair(zero, zero), Medium(), base_grid(), levels=3)
    assert all(c.exact for c in conv.values())


def test_convergence_requires_halvings():
    with pytest.raises(ValueError, match="at least 3"):
        convergence_order([1, 1], [0.1, 0.05])
    with pytest.raises(ValueError, match="halve"):
        convergence_order([1, 1, 1], [0.1, 0.05, 0.02])


def test_non_monotone_flagged_but_fitted():
    rep = convergence_order([1e-2, 3e-3, 4e-3, 1e-4], [0.1, 0.05, 0.025, 0.0125])
    assert not rep.monotone and rep.warnings
    assert rep.slope is not None


def test_first_order_injection_gives_slope_one():
    # a derivative stencil plus an O(h) error term
    x0 = 0.4

    def err(h):
        approx = (np.sin(x0 + h) - np.sin(x0 - h)) / (2 * h) + 0.5 * h
        return abs(approx - np.cos(x0))

    rep = convergence_order(err, [1e-2 / 2**i for i in range(4)])
    assert rep.slope == pytest.approx(1.0, abs=0.05)


def test_first_order_injection_in_field():
    _, pair = vacuum_pair()
    medium = Medium()
    perturbed = lambda h: (lambda r, t: pair.E(r, t) * (1 + h * r[..., :1] ** 2))
    grids = refinement_grids(base_grid(), 4)
    res = []
    for g in grids:
        h = g.spacing[0]
        res.append(wave_residual(perturbed(h), medium, g)["wave"].max)
    rep = convergence_order(res, [g.spacing[0] for g in grids])
    assert rep.slope == pytest.approx(1.0, abs=0.1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_discrete_div_curl_is_small(seed):
    g = np.random.default_rng(seed)
    A = g.normal(size=(3, 3))
    ph = g.uniform(0, 2 * np.pi, 3)

    def F(r, t):
        return np.stack([np.sin(r @ A[i] + ph[i] + t) for i in range(3)], axis=-1)

    vals = []
    grids = refinement_grids(GridSpec.centered(g.uniform(-1, 1, 3), 0.1, 9), 3)
    for grid in grids:
        vals.append(np.max(np.abs(div_curl(sample(F, grid)))))
    # central differences along different axes commute, so only rounding is left:
    # about eps * |curl F| / h with |curl F| bounded by the largest wave vector
    for v, grid in zip(vals, grids):
        assert v <= 1e3 * np.finfo(float).eps * np.sum(np.abs(A)) / grid.spacing[0]


def test_broken_pair_zero_s_in_conductor():
    medium = Medium(1, 1, 2)
    d = solve_dispersion(1.0, medium)
    spec = AttenuatedWaveSpec(project_transverse(cvec(1, 0, 0), OBLIQUE), OBLIQUE, 1.0, d)
    pair = broken_pair(spec, medium, "zero-s")
    grid = GridSpec.centered([0, 0, 0], 2 * np.pi / d.k / 20, 9, 0.0, dt=2 * np.pi / 30)
    conv, reports = maxwell_convergence(pair, medium, grid)
    assert reports[-1]["curl-B"].max > 1e-3
    assert abs(conv["curl-B"].slope) < 0.5
