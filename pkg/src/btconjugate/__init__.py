"""Conjugate solution pairs of Backlund transformations, classical and Maxwell.

The Maxwell equations tie the electric and magnetic wave equations together
the way a Backlund transformation ties two PDEs: plane-wave solutions of each
wave equation become an electromagnetic field only for special amplitude and
wavenumber choices. This package builds those pairs in vacuum and in Ohmic
conductors, builds the classical Cauchy-Riemann, Liouville and sine-Gordon
examples, and checks all of them with an independent finite-difference
residual oracle.
"""
from .classical_bt import (
    HarmonicPoly,
    LaplaceQuadParams,
    ScalarField2D,
    cauchy_riemann_residual,
    integrate_cauchy_riemann,
    laplace_conjugate_params,
    liouville_bt_residual,
    liouville_pde_residual,
    liouville_solution,
    sine_gordon_bt_residual,
    sine_gordon_kink,
    sine_gordon_pde_residual,
)
from .maxwell_conductor import (
    AttenuatedWaveSpec,
    ConductorDispersion,
    conductor_amplitude_check,
    make_conjugate_conductor,
    real_fields_conductor,
    solve_dispersion,
)
from .maxwell_vacuum import (
    EMFieldPair,
    Medium,
    PlaneWaveSpec,
    amplitude_relations_check,
    make_conjugate_vacuum,
    project_transverse,
    real_fields_vacuum,
    vacuum_wavenumber,
)
from .residual_checker import (
    ConvergenceReport,
    ResidualReport,
    convergence_order,
    maxwell_convergence,
    maxwell_residual,
    wave_convergence,
    wave_residual,
)
from .vectors_grid import GridSpec, SampledField, central_diff, cross, cvec, dot, rvec, sample

__version__ = "0.1.0"
