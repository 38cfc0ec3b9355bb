"""decaylab: numerics for diffusive energy decay.

Bounded-interval and whole-space Poincare-type inequalities, heat-semigroup
decay classification (decay indicator / decay character / exponential
characterization via frequency gaps), Fourier-splitting rate prediction,
and a desk-scale 2D incompressible Navier-Stokes check.
"""

from .spectral import (
    DEFAULT_QUADRATURE,
    EnergyTrace,
    GridField,
    QuadratureError,
    QuadratureSpec,
    RadialSpectralProfile,
    SpectralField,
    TailBound,
    TraceSource,
    band_energy,
    dft_forward,
    dft_inverse,
    gradient_energy,
    grid_energy,
    heat_energy,
    loglog_slope,
    low_ball_mass,
    radial_energy,
    sphere_area,
    spectral_energy,
)
from .profiles import (
    GaussianFamily,
    bump_profile,
    power_cutoff_profile,
    random_band_limited,
    riesz_reference_profile,
    ring_profile,
    zero_profile,
)

__version__ = "0.1.0"
