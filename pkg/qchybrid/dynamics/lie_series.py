"""
# Lie-Series Propagation

Truncated exponential of the adjoint action:

    A(t) = Σ_{k=0}^{K} (t^k/k!) ad^k(A)

with ad(A) = (A, H) in the Heisenberg picture and ad(ρ) = (H, ρ)′ in the Schrödinger picture.
Iterated brackets of polynomials stay polynomial, so the only error is the truncated tail,
estimated from the first omitted term.
"""

# Std-Lib Imports
import math
from enum import Enum
from typing import Any, List, Sequence, Union
from warnings import warn

# Local Imports
from ..datatype import datatype
from ..hybrid import DensityField, HybridObservable, heisenberg_bracket, schrodinger_bracket

# Remainder estimates above this fraction of the input norm are reported
TRUNCATION_RTOL = 1e-6


class TruncationWarning(UserWarning):
    """A Lie-series remainder estimate exceeds its tolerance"""


class Picture(Enum):
    """# Enumerated Pictures of Evolution"""

    HEISENBERG = "heisenberg"
    SCHRODINGER = "schrodinger"

    @classmethod
    def default(cls) -> "Picture":
        return Picture.HEISENBERG


Evolvable = Union[HybridObservable, DensityField]


@datatype
class SeriesResult:
    """# Lie-Series Result
    The evolved `value` at time `t`, and the estimated norm of the omitted tail."""

    value: Any  # HybridObservable or DensityField
    t: float
    order: int
    remainder: float
    steps: int = 1


class LieSeries:
    """
    # Lie Series

    Iterated brackets T₀ = X, T_{k+1} = ad(T_k), computed once for orders 0..K+1,
    then evaluated at any time. T_{K+1} is kept for the remainder estimate only.
    """

    def __init__(self, X: Evolvable, H: HybridObservable, order: int, picture: Picture = None):
        if order < 1:
            raise ValueError(f"Invalid Lie-series order {order}, must be at least 1")
        picture = picture or _picture_of(X)
        if picture == Picture.HEISENBERG and not isinstance(X, HybridObservable):
            raise TypeError(f"Heisenberg evolution requires a HybridObservable, got {type(X).__name__}")
        if picture == Picture.SCHRODINGER and not isinstance(X, DensityField):
            raise TypeError(f"Schrödinger evolution requires a DensityField, got {type(X).__name__}")

        self.picture = picture
        self.H = H
        self.order = order
        self.terms: List[Evolvable] = [X]
        for _ in range(order + 1):
            self.terms.append(self._ad(self.terms[-1]))

    def _ad(self, X: Evolvable) -> Evolvable:
        if self.picture == Picture.HEISENBERG:
            return heisenberg_bracket(X, self.H)
        return schrodinger_bracket(self.H, X)

    @property
    def initial(self) -> Evolvable:
        return self.terms[0]

    @property
    def terminates(self) -> bool:
        """Whether the series is exact: the first omitted bracket vanishes identically"""
        return self.terms[-1].is_zero

    def value(self, t: float) -> Evolvable:
        """Σ_{k ≤ K} (t^k/k!) T_k"""
        rv = self.terms[0]
        coeff = 1.0
        for k in range(1, self.order + 1):
            coeff *= t / k
            if coeff == 0:
                break
            rv = rv + self.terms[k] * coeff
        if isinstance(rv, DensityField):
            return rv.checked()
        return rv

    def remainder(self, t: float) -> float:
        """‖T_{K+1}‖·|t|^{K+1}/(K+1)!"""
        K = self.order
        return self.terms[K + 1].norm() * abs(t) ** (K + 1) / math.factorial(K + 1)

    def __call__(self, t: float) -> SeriesResult:
        return SeriesResult(value=self.value(t), t=t, order=self.order, remainder=self.remainder(t))


def _picture_of(X: Evolvable) -> Picture:
    if isinstance(X, DensityField):
        return Picture.SCHRODINGER
    if isinstance(X, HybridObservable):
        return Picture.HEISENBERG
    raise TypeError(f"Cannot evolve {type(X).__name__}")


def _check_remainder(result: SeriesResult, X: Evolvable) -> SeriesResult:
    scale = X.norm()
    if result.remainder > TRUNCATION_RTOL * scale:
        msg = f"Lie-series remainder estimate {result.remainder:.3g} at t={result.t} "
        msg += f"exceeds {TRUNCATION_RTOL:g}·‖X‖ = {TRUNCATION_RTOL * scale:.3g}. "
        msg += "Increase `order` or `steps`."
        warn(msg, TruncationWarning, stacklevel=3)
    return result


def propagate(X: Evolvable, H: HybridObservable, t: float, order: int, *, steps: int = 1) -> SeriesResult:
    """# Step-and-Restart Propagation
    Split [0, t] into `steps` equal intervals, restarting the series from each endpoint.
    Remainder estimates of the steps add."""
    if steps < 1:
        raise ValueError(f"Invalid step count {steps}")
    dt = t / steps
    current, total = X, 0.0
    for _ in range(steps):
        series = LieSeries(current, H, order)
        current = series.value(dt)
        total += series.remainder(dt)
    result = SeriesResult(value=current, t=t, order=order, remainder=total, steps=steps)
    return _check_remainder(result, X)


def lie_series_heisenberg(
    A: HybridObservable, H: HybridObservable, t: float, order: int, *, steps: int = 1
) -> SeriesResult:
    """# Heisenberg-Picture Lie Series
    dA/dt = (A, H). Warns with `TruncationWarning` if the remainder exceeds 1e-6·‖A‖."""
    if not isinstance(A, HybridObservable):
        raise TypeError(f"Heisenberg evolution requires a HybridObservable, got {type(A).__name__}")
    A.check_compatible(H)
    return propagate(A, H, t, order, steps=steps)


def lie_series_schrodinger(
    rho: DensityField, H: HybridObservable, t: float, order: int, *, steps: int = 1
) -> SeriesResult:
    """# Schrödinger-Picture Lie Series
    dρ/dt = (H, ρ)′. Every bracket term integrates to zero, so normalization is kept to rounding."""
    if not isinstance(rho, DensityField):
        raise TypeError(f"Schrödinger evolution requires a DensityField, got {type(rho).__name__}")
    if not H.basis.same_as(rho.basis):
        raise ValueError(f"Basis mismatch: {H.basis} vs {rho.basis}")
    return propagate(rho, H, t, order, steps=steps)


def evolve_on_grid(
    X: Evolvable, H: HybridObservable, times: Sequence[float], order: int, *, steps: int = 1
) -> List[SeriesResult]:
    """# Grid Evolution
    Evolve `X` through each interval of the non-decreasing grid `times` (starting from t = 0),
    restarting the series at every grid time. Each result's `remainder` is the running sum
    of the interval estimates, so the last one bounds the whole trajectory."""
    picture = _picture_of(X)
    step = lie_series_schrodinger if picture == Picture.SCHRODINGER else lie_series_heisenberg
    results: List[SeriesResult] = []
    current, prev, total = X, 0.0, 0.0
    for t in times:
        t = float(t)
        if t < prev:
            raise ValueError(f"Time grid must be non-decreasing and start at t >= 0, got {list(times)}")
        if t > prev:
            result = step(current, H, t - prev, order, steps=steps)
            current, total = result.value, total + result.remainder
        results.append(SeriesResult(value=current, t=t, order=order, remainder=total, steps=steps))
        prev = t
    return results
