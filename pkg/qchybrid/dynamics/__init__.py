"""
# Hybrid Dynamics

Lie-series evolution in both pictures, spin-orbit closed forms, expectation values.
"""

from .lie_series import (
    LieSeries,
    Picture,
    SeriesResult,
    TruncationWarning,
    TRUNCATION_RTOL,
    propagate,
    evolve_on_grid,
    lie_series_heisenberg,
    lie_series_schrodinger,
)
from .rotation import RotationField
from .spin_orbit import (
    EPS_L,
    SingularPointWarning,
    SpinComponents,
    split_singular,
    heisenberg_components,
    schrodinger_components,
    spin_orbit_closed_form,
    spin_orbit_closed_form_L_only,
    spin_orbit_schrodinger_closed_form,
    spin_orbit_schrodinger_L_only,
)
from .expectation import expectation, EvolutionReport, expectation_report, conservation_report
