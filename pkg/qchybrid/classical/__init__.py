"""
# Classical Phase-Space Algebra

Polynomials, Gaussian-weighted state components and plane waves,
with exact Poisson brackets and phase-space integrals.
"""

from .polynomial import Polynomial, PhasePolynomial, poisson_bracket, polynomial_sum
from .literal import parse_literal
from .point import PhasePoint, PointSet, as_array
from .gaussian import GaussianField, poisson_bracket_state, integrate, gaussian_sum
from .planewave import (
    PlaneWave,
    PlaneWaveSum,
    planewave_pairing,
    planewave_poisson,
    planewave_product,
)


def evaluate(A, p):
    """Pointwise value of a `PhasePolynomial` or `GaussianField` at point(s) `p`"""
    if isinstance(A, GaussianField):
        return A.evaluate(p)
    if isinstance(A, PhasePolynomial):
        values = A.evaluate(as_array(p, A.n_c))
        return values[0].item() if isinstance(p, PhasePoint) else values
    raise TypeError(f"Cannot evaluate {type(A).__name__}")
