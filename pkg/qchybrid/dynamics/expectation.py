"""
# Expectation Values & Conservation
"""

# Std-Lib Imports
from typing import Dict, List, Mapping, Sequence

# PyPi Imports
import numpy as np
from pydantic import validator

# Local Imports
from ..datatype import datatype
from ..hybrid import DensityField, HybridObservable, pairing
from .lie_series import Picture, SeriesResult, evolve_on_grid


def expectation(A: HybridObservable, rho: DensityField) -> float:
    """# Expectation Value
    ⟨A⟩_ρ = ∫ tr(ρA), exact through Gaussian moments"""
    return float(np.real(pairing(A, rho)))


@datatype
class EvolutionReport:
    """# Evolution Report
    Expectation values of named quantities along a time grid, their maximum drift
    from the initial value, and the largest series-remainder estimate."""

    times: List[float]
    values: Dict[str, List[float]]
    drift: Dict[str, float]
    truncation: float
    order: int
    picture: str = Picture.SCHRODINGER.value

    @validator("times")
    def _increasing(cls, times):
        if not times:
            raise ValueError("Empty time grid")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"Time grid must be strictly increasing, got {times}")
        return times

    def conserved(self, tol: float) -> Dict[str, bool]:
        return {name: d < tol for name, d in self.drift.items()}


def expectation_report(
    quantities: Mapping[str, HybridObservable], rho: DensityField, states: Sequence[SeriesResult]
) -> EvolutionReport:
    """Expectation values of `quantities` in each evolved state of `states`, their drift
    from ⟨Q⟩_ρ, and the accumulated remainder of the last state"""
    if not states:
        raise ValueError("Empty state trajectory")
    values = {name: [expectation(Q, s.value) for s in states] for name, Q in quantities.items()}
    initial = {name: expectation(Q, rho) for name, Q in quantities.items()}
    drift = {name: max(abs(v - initial[name]) for v in vals) for name, vals in values.items()}
    return EvolutionReport(
        times=[s.t for s in states],
        values=values,
        drift=drift,
        truncation=states[-1].remainder,
        order=states[-1].order,
    )


def conservation_report(
    H: HybridObservable,
    quantities: Mapping[str, HybridObservable],
    rho: DensityField,
    times: Sequence[float],
    *,
    order: int = 8,
    steps: int = 1,
) -> EvolutionReport:
    """# Conservation Report
    Evolve `rho` under `H` in the Schrödinger picture, restarting the Lie series at every time
    in `times`, and record each quantity's drift |⟨Q⟩_ρ(t) − ⟨Q⟩_ρ(0)|.
    For a conserved Q every bracket term pairs to zero, so its drift is rounding-level at any order."""
    return expectation_report(quantities, rho, evolve_on_grid(rho, H, times, order, steps=steps))
