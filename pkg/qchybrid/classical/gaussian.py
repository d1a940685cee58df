"""
# Gaussian-Weighted Polynomials

State components: a phase-space polynomial times a fixed isotropic Gaussian envelope

    F(v) = P(v) · exp(−|v − v̄|² / (2 s²)),     v = (x, k)

The class is closed under partial derivatives, multiplication by polynomials, and the
Poisson bracket with a polynomial; its phase-space integral is exact.
"""

# Std-Lib Imports
import math
from numbers import Number
from typing import Iterable, Optional, Union

# PyPi Imports
import numpy as np
from scipy.special import comb

# Local Imports
from .polynomial import PhasePolynomial, polynomial_sum
from .point import PhasePoint, Points, as_array


class GaussianField:
    """
    # Gaussian Field

    `poly` times the Gaussian envelope of `center` and `width`. Immutable.
    """

    __slots__ = ("poly", "center", "width")

    def __init__(self, poly: PhasePolynomial, center: PhasePoint, width: float):
        if not isinstance(poly, PhasePolynomial):
            raise TypeError(f"GaussianField requires a PhasePolynomial, got {type(poly).__name__}")
        if center.n_c != poly.n_c:
            raise ValueError(f"Envelope center dimension {center.n_c} does not match polynomial n_c={poly.n_c}")
        if not width > 0 or not math.isfinite(width):
            raise ValueError(f"Invalid Gaussian width {width}")
        self.poly = poly
        self.center = center
        self.width = float(width)

    @classmethod
    def envelope_only(cls, center: PhasePoint, width: float) -> "GaussianField":
        """The bare envelope, with unit polynomial"""
        return cls(PhasePolynomial.constant(center.n_c, 1.0), center, width)

    @property
    def n_c(self) -> int:
        return self.poly.n_c

    def same_envelope(self, other: "GaussianField") -> bool:
        return self.center == other.center and self.width == other.width

    def _check_envelope(self, other: "GaussianField") -> None:
        if not self.same_envelope(other):
            msg = f"Gaussian envelope mismatch: center {self.center}, width {self.width} "
            msg += f"vs center {other.center}, width {other.width}"
            raise ValueError(msg)

    def with_poly(self, poly: PhasePolynomial) -> "GaussianField":
        return GaussianField(poly, self.center, self.width)

    def zero(self) -> "GaussianField":
        return self.with_poly(self.poly.zero())

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def norm(self) -> float:
        """Largest absolute polynomial coefficient. The envelope is not included."""
        return self.poly.norm()

    def allclose(self, other: "GaussianField", atol: float = 1e-10) -> bool:
        self._check_envelope(other)
        return self.poly.allclose(other.poly, atol)

    # Arithmetic

    def __add__(self, other) -> "GaussianField":
        if not isinstance(other, GaussianField):
            return NotImplemented
        self._check_envelope(other)
        return self.with_poly(self.poly + other.poly)

    def __sub__(self, other) -> "GaussianField":
        if not isinstance(other, GaussianField):
            return NotImplemented
        self._check_envelope(other)
        return self.with_poly(self.poly - other.poly)

    def __neg__(self) -> "GaussianField":
        return self.with_poly(-self.poly)

    def __mul__(self, other) -> "GaussianField":
        if isinstance(other, (Number, PhasePolynomial)):
            return self.with_poly(self.poly * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianField":
        if isinstance(other, Number):
            return self.with_poly(self.poly / other)
        return NotImplemented

    def _offset(self, var: int) -> PhasePolynomial:
        """The polynomial v_var − v̄_var"""
        monomials = PhasePolynomial.xs(self.n_c) + PhasePolynomial.ks(self.n_c)
        return monomials[var] - self.center.to_array()[var]

    def derivative(self, var: int) -> "GaussianField":
        """∂F/∂v = (∂P/∂v − P·(v − v̄)/s²) · envelope"""
        d = self.poly.derivative(var) - self.poly * self._offset(var) / self.width**2
        return self.with_poly(d)

    # Evaluation & Integration

    def envelope(self, points: Points) -> np.ndarray:
        arr = as_array(points, self.n_c)
        d2 = np.sum((arr - self.center.to_array()[None, :]) ** 2, axis=1)
        return np.exp(-d2 / (2 * self.width**2))

    def evaluate(self, points: Points):
        """Pointwise values. A single `PhasePoint` yields a scalar."""
        values = self.poly.evaluate(as_array(points, self.n_c)) * self.envelope(points)
        return values[0].item() if isinstance(points, PhasePoint) else values

    def integrate(self) -> Union[float, complex]:
        """Exact ∫ d^n x d^n k F"""
        return integrate(self)


def _raw_moments(center: float, width: float, max_order: int) -> np.ndarray:
    """∫ v^a exp(−(v−c)²/(2s²)) dv for a = 0..max_order, via the binomial expansion about c.
    Odd central moments vanish; the central moment of order 2m is s^{2m}(2m−1)!!·√(2π)·s."""
    central = np.zeros(max_order + 1)
    norm = math.sqrt(2 * math.pi) * width
    for j in range(0, max_order + 1, 2):
        double_factorial = math.prod(range(j - 1, 0, -2)) if j else 1
        central[j] = width**j * double_factorial * norm
    rv = np.zeros(max_order + 1)
    for a in range(max_order + 1):
        j = np.arange(a + 1)
        rv[a] = np.sum(comb(a, j) * center ** (a - j) * central[j])
    return rv


def integrate(F: GaussianField) -> Union[float, complex]:
    """# Phase-Space Integral
    Exact ∫ d^n x d^n k of a GaussianField, term by term as products of one-dimensional moments."""
    if F.poly.is_zero:
        return 0.0
    exps = F.poly.exps
    center = F.center.to_array()
    factors = np.ones(exps.shape[0])
    for v in range(exps.shape[1]):
        table = _raw_moments(center[v], F.width, int(exps[:, v].max()))
        factors = factors * table[exps[:, v]]
    total = factors @ F.poly.coeffs
    return total.item()


def gaussian_sum(items: Iterable[GaussianField], like: GaussianField) -> GaussianField:
    """Sum of many fields sharing `like`'s envelope"""
    items = list(items)
    for f in items:
        like._check_envelope(f)
    return like.with_poly(polynomial_sum([f.poly for f in items], like.poly))


def poisson_bracket_state(A: PhasePolynomial, F: GaussianField) -> GaussianField:
    """# Poisson Bracket of an Observable with a State Component
    Exact {A, F}, with the envelope derivative folded into the polynomial part."""
    if not isinstance(A, PhasePolynomial) or not isinstance(F, GaussianField):
        raise TypeError(f"Invalid arguments {type(A).__name__}, {type(F).__name__} to poisson_bracket_state")
    if A.n_c != F.n_c:
        raise ValueError(f"Poisson bracket dimension mismatch: n_c={A.n_c} vs n_c={F.n_c}")
    n = A.n_c
    if A.is_constant or F.is_zero:
        return F.zero()

    parts = []
    for i in range(n):
        dx, dk = A.derivative(i), A.derivative(n + i)
        if not dx.is_zero:
            parts.append(dx * F.derivative(n + i).poly)
        if not dk.is_zero:
            parts.append(-(dk * F.derivative(i).poly))
    return F.with_poly(polynomial_sum(parts, F.poly))
