"""Spectral model of interfacial waves in a two-layer fluid with a strip current."""

from .dispersion import (
    DispersionBranch,
    deep_water_speed,
    group_velocity,
    long_wave_speed,
    single_medium_speed,
    wave_speed,
)
from .dno import ConvergenceError, apply_B, apply_G, composite_kinetic, g0, g1, g2, solve_B
from .evolution import (
    Trajectory,
    evolve,
    frame_equivalence_residual,
    galilean_shift,
    gaussian_packet,
    linear_step,
    monochromatic_state,
    random_state,
    travelling_wave,
)
from .hamiltonian import (
    EnergyBreakdown,
    background_energy_offset,
    energy,
    momentum,
    quadratic_energy,
    quadratic_variational_derivatives,
)
from .oracle import BvpResolution, dno_bvp, functional_gradient_fd
from .params import MediaParams, ShearProfile, StripBreachError, WaveState
from .spectral import (
    FourierMultiplier,
    PeriodicGrid,
    RealField,
    apply_multiplier,
    dealias,
    derivative,
    inner_product,
)

__version__ = "0.1.0"
