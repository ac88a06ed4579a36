"""Supercurrent streamlines through one and two slits in a planar superconductor.

Evaluates the analytic far-field slit wave functions, the closed-form
two-slit supercurrent with its velocity / quantum-potential diagnostics,
integrates current streamlines, and validates the flat radial-envelope
approximation behind the analytic fields. A Cython core accelerates the
tracing hot loop when available; `BACKEND` reports which one is active.
"""

from ._kernels import BACKEND
from .current import (
    CurrentDecomposition,
    CurrentSample,
    DoubleSlitCurrent,
    QuantumPotentialSample,
    SingleSlitCurrent,
    WaveCurrent,
    current_generic,
    current_two_slit,
    divergence,
    quantum_force_residual,
    quantum_potential,
    sample_two_slit,
    velocity,
)
from .errors import DegenerateDensityError, DomainError, SeedError, StepSizeError
from .model import (
    DEFAULT_EXCLUSION_RADIUS,
    CallableWave,
    DoubleSlitWave,
    MediumParams,
    PlaneWave,
    SingleSlitWave,
    SlitGeometry,
    nonlinear_fraction,
    psi_double_slit,
    psi_single_slit,
    slit_radii,
    wavenumber_from_medium,
)
from .radial import RadialSolution, RadialState, flatness_metric, radial_rhs, solve_radial
from .trace import (
    FamilyResult,
    IntegratorConfig,
    Seed,
    Streamline,
    asymptotic_angle,
    equal_flux_seed_line,
    fringe_angles,
    integrate_streamline,
    trace_family,
    wiggle_count,
)

__version__ = "0.1.0"
