"""
# Hybrid Density Fields

ρ(x, k) = ρ₀𝟙 + Σᵢ ρᵢ qᵢ, every component a GaussianField on one shared envelope.
"""

# Std-Lib Imports
from numbers import Number
from typing import Callable, Sequence

# PyPi Imports
import numpy as np

# Local Imports
from ..su import SuBasis
from ..classical import GaussianField, PhasePoint, PhasePolynomial
from ..classical.point import Points, as_array
from .observable import HybridObservable

NORMALIZATION_TOL = 1e-9

# Default state envelope, chosen so that |L| stays away from zero over most of its weight
DEFAULT_CENTER = PhasePoint(x=(1.0, 0.0, 0.0), k=(0.0, 1.0, 0.0))
DEFAULT_WIDTH = 0.4


class DensityField:
    """
    # Density Field

    Hybrid state with GaussianField components.
    Hermitian by type (real polynomial coefficients).
    Construction checks the normalization ⟪ρ⟫ = ∫ tr ρ = 1 unless `check=False`,
    which is reserved for bracket results and other increments.
    Positivity is deliberately *not* enforced; see `qchybrid.positivity`.
    """

    __slots__ = ("basis", "rho0", "rvec")

    def __init__(self, basis: SuBasis, rho0: GaussianField, rvec: Sequence[GaussianField], *, check: bool = True):
        rvec = tuple(rvec)
        if len(rvec) != basis.size:
            raise ValueError(f"Expected {basis.size} state components for n={basis.n}, got {len(rvec)}")
        for f in (rho0,) + rvec:
            if not isinstance(f, GaussianField):
                raise TypeError(f"State components must be GaussianFields, got {type(f).__name__}")
            rho0._check_envelope(f)
            if not f.poly.is_real:
                raise ValueError("State components must have real coefficients")
        self.basis = basis
        self.rho0 = rho0
        self.rvec = rvec
        if check:
            trace = self.trace_integral()
            if abs(trace - 1.0) > NORMALIZATION_TOL:
                raise ValueError(f"Density field is not normalized: ∫ tr ρ = {trace}")

    @classmethod
    def gaussian(
        cls,
        basis: SuBasis,
        alpha: PhasePolynomial,
        beta: Sequence[PhasePolynomial],
        center: PhasePoint = DEFAULT_CENTER,
        width: float = DEFAULT_WIDTH,
    ) -> "DensityField":
        """Normalized state (α𝟙 + Σ βᵢqᵢ)·envelope, rescaled so that ∫ tr ρ = 1"""
        field = lambda p: GaussianField(p, center, width)
        raw = cls(basis, field(alpha), [field(b) for b in beta], check=False)
        trace = raw.trace_integral()
        if not trace > 0:
            raise ValueError(f"Cannot normalize a state with ∫ tr ρ = {trace}")
        return (raw * (1.0 / trace)).checked()

    def checked(self) -> "DensityField":
        """Copy of this field with the normalization check applied"""
        return DensityField(self.basis, self.rho0, self.rvec, check=True)

    def _unchecked(self, rho0: GaussianField, rvec: Sequence[GaussianField]) -> "DensityField":
        return DensityField(self.basis, rho0, rvec, check=False)

    # Inspection

    @property
    def n_c(self) -> int:
        return self.rho0.n_c

    @property
    def center(self) -> PhasePoint:
        return self.rho0.center

    @property
    def width(self) -> float:
        return self.rho0.width

    @property
    def components(self) -> tuple:
        return (self.rho0,) + self.rvec

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero for f in self.components)

    def trace_integral(self) -> float:
        """∫ tr ρ = n ∫ ρ₀ (the qᵢ are traceless)"""
        return float(np.real(self.basis.n * self.rho0.integrate()))

    @property
    def is_normalized(self) -> bool:
        return abs(self.trace_integral() - 1.0) <= NORMALIZATION_TOL

    def norm(self) -> float:
        """Largest absolute polynomial coefficient over all components"""
        return max(f.norm() for f in self.components)

    def allclose(self, other: "DensityField", atol: float = 1e-10) -> bool:
        return (self - other).norm() <= atol

    def check_compatible(self, other: "DensityField") -> None:
        if not isinstance(other, DensityField):
            raise TypeError(f"Expected a DensityField, got {type(other).__name__}")
        if not self.basis.same_as(other.basis):
            raise ValueError(f"Basis mismatch: {self.basis} vs {other.basis}")
        self.rho0._check_envelope(other.rho0)

    def polynomial_part(self) -> HybridObservable:
        """The state with its envelope stripped, as an observable-shaped object"""
        return HybridObservable(self.basis, self.rho0.poly, [f.poly for f in self.rvec])

    def map(self, fn: Callable[[GaussianField], GaussianField]) -> "DensityField":
        return self._unchecked(fn(self.rho0), [fn(f) for f in self.rvec])

    # Arithmetic. Results are unchecked; call `checked()` where a state is expected.

    def __add__(self, other) -> "DensityField":
        if not isinstance(other, DensityField):
            return NotImplemented
        self.check_compatible(other)
        return self._unchecked(self.rho0 + other.rho0, [a + b for a, b in zip(self.rvec, other.rvec)])

    def __neg__(self) -> "DensityField":
        return self.map(lambda f: -f)

    def __sub__(self, other) -> "DensityField":
        if not isinstance(other, DensityField):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "DensityField":
        if isinstance(other, (Number, PhasePolynomial)):
            return self.map(lambda f: f * other)
        return NotImplemented

    __rmul__ = __mul__

    # Evaluation

    def envelope(self, points: Points) -> np.ndarray:
        return self.rho0.envelope(points)

    def to_matrices(self, points: Points) -> np.ndarray:
        """(m, n, n) values ρ(p), envelope included"""
        arr = as_array(points, self.n_c)
        return self.polynomial_part().to_matrices(arr) * self.envelope(arr)[:, None, None]

    def poly_matrices(self, points: Points) -> np.ndarray:
        """(m, n, n) values with the (positive) envelope stripped"""
        return self.polynomial_part().to_matrices(as_array(points, self.n_c))

    def __repr__(self) -> str:
        return f"DensityField({self.polynomial_part()!r}; center={self.center}, width={self.width})"
