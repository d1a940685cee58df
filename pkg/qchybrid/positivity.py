"""
# Positivity

Local spectra of hybrid observables and states, positivity margins over sampled phase
points, and detection of the time at which hybrid evolution first breaks positivity.

Positivity is certified only on the sampled points. Density fields are scanned with their
(positive) Gaussian envelope stripped, so margins compare polynomial parts.
"""

# Std-Lib Imports
import math
from typing import Callable, List, Optional, Tuple, Union

# PyPi Imports
import numpy as np

# Local Imports
from .datatype import datatype
from .su import HERMITIAN_TOL, build_basis
from .classical import Polynomial, PhasePoint, PhasePolynomial, PointSet
from .classical.point import Points, as_array
from .hybrid import DensityField, HybridObservable
from .models import N_C, SpinOrbit
from .instances import monomials
from .dynamics import (
    EPS_L,
    heisenberg_components,
    propagate,
    schrodinger_components,
    spin_orbit_closed_form_L_only,
    split_singular,
)

# Coarse scans use `t_max / DEFAULT_RESOLUTION` steps, refined by bisection to `DEFAULT_TOL`
DEFAULT_RESOLUTION = 200
DEFAULT_TOL = 1e-6


def _hermitian_matrices(A: Union[HybridObservable, DensityField], points: Points) -> np.ndarray:
    if isinstance(A, DensityField):
        return A.poly_matrices(points)
    if not isinstance(A, HybridObservable):
        raise TypeError(f"Cannot take the spectrum of {type(A).__name__}")
    if not A.is_hermitian(HERMITIAN_TOL):
        raise ValueError("Local spectra require a Hermitian observable (real coefficients)")
    return A.to_matrices(points)


def local_spectrum(A: Union[HybridObservable, DensityField], p: PhasePoint) -> np.ndarray:
    """# Local Spectrum
    Sorted eigenvalues of the n×n Hermitian matrix A(p)"""
    return np.linalg.eigvalsh(_hermitian_matrices(A, p))[0]


def local_spectra(A: Union[HybridObservable, DensityField], points: Points) -> np.ndarray:
    """(m, n) sorted eigenvalues at each point"""
    return np.linalg.eigvalsh(_hermitian_matrices(A, points))


@datatype
class PositivityScan:
    """# Positivity Scan
    Smallest eigenvalue at each point, their minimum, and where it is attained."""

    points: PointSet
    margins: np.ndarray
    global_margin: float
    witness_index: int

    @property
    def witness(self) -> PhasePoint:
        return self.points[self.witness_index]

    @property
    def positive(self) -> bool:
        return self.global_margin >= 0

    @classmethod
    def from_margins(cls, points: PointSet, margins: np.ndarray) -> "PositivityScan":
        idx = int(np.argmin(margins))
        return cls(points=points, margins=margins, global_margin=float(margins[idx]), witness_index=idx)


def _point_set(points: Points, n_c: int) -> PointSet:
    ps = points if isinstance(points, PointSet) else PointSet(n_c, as_array(points, n_c))
    if not len(ps):
        raise ValueError("Positivity scan requires at least one point")
    return ps


def positivity_margin(A: Union[HybridObservable, DensityField], points: Points) -> PositivityScan:
    """# Positivity Margin
    Minimum eigenvalue per point and overall. Density fields are scanned envelope-stripped."""
    ps = _point_set(points, A.n_c)
    return PositivityScan.from_margins(ps, local_spectra(A, ps)[:, 0])


def _spin_margins(scalar: np.ndarray, vector: np.ndarray, hbar: float) -> np.ndarray:
    """Smallest eigenvalue of a + b·S, i.e. a − (ħ/2)|b|"""
    return np.real(scalar) - 0.5 * hbar * np.linalg.norm(np.real(vector), axis=1)


@datatype
class ViolationReport:
    """# Violation Report
    First time `t_star` at which the global margin goes negative, if any up to `t_max`.
    `margin_curve` holds (t, global margin) along the coarse scan."""

    t_star: Optional[float]
    witness: Optional[PhasePoint]
    margin_curve: List[Tuple[float, float]]
    t_max: float
    resolution: int
    tol: float

    @property
    def violated(self) -> bool:
        return self.t_star is not None


Evolvable = Union[HybridObservable, DensityField]
MarginFn = Callable[[float], PositivityScan]


class _SeriesMargins:
    """Global margins along Lie-series evolution, stepping forward from the latest anchor time"""

    def __init__(self, initial: Evolvable, H: HybridObservable, points: PointSet, order: int, max_step: float):
        self.H = H
        self.points = points
        self.order = order
        self.max_step = max_step
        self.anchor = (0.0, initial)

    def state(self, t: float) -> Evolvable:
        t0, X = self.anchor
        if t < t0:
            raise RuntimeError(f"Cannot step backwards from t={t0} to t={t}")
        if t == t0:
            return X
        steps = max(1, math.ceil((t - t0) / self.max_step))
        return propagate(X, self.H, t - t0, self.order, steps=steps).value

    def advance(self, t: float) -> None:
        self.anchor = (t, self.state(t))

    def __call__(self, t: float) -> PositivityScan:
        return positivity_margin(self.state(t), self.points)


class _ClosedFormMargins:
    """Global margins from the spin-orbit closed forms"""

    def __init__(self, initial: Evolvable, model: SpinOrbit, points: PointSet):
        self.initial = initial
        self.model = model
        self.points, _ = split_singular(points)
        if not len(self.points):
            raise ValueError("No points away from the |L| = 0 locus")

    def advance(self, t: float) -> None:
        pass

    def __call__(self, t: float) -> PositivityScan:
        X, arr = self.initial, self.points.array
        if isinstance(X, DensityField):
            comps = schrodinger_components(X, self.model, t, arr)
            # Far-out envelopes underflow to zero; the unstripped values carry the same sign there
            env = X.envelope(arr)
            env = np.where(env > 0, env, 1.0)
            margins = _spin_margins(comps.scalar / env, comps.vector / env[:, None], X.basis.hbar)
        else:
            comps = heisenberg_components(X, self.model, t, arr)
            margins = _spin_margins(comps.scalar, comps.vector, X.basis.hbar)
        return PositivityScan.from_margins(self.points, margins)


def violation_scan(
    initial: Evolvable,
    H: Union[SpinOrbit, HybridObservable],
    points: Points,
    t_max: float,
    *,
    tol: float = DEFAULT_TOL,
    resolution: int = DEFAULT_RESOLUTION,
    order: int = 8,
    max_step: float = 0.25,
) -> ViolationReport:
    """# Violation Scan
    Coarse scan of the global margin in steps of `t_max / resolution`, then bisection to `tol`
    on the first interval ending negative.
    A `SpinOrbit` model uses the closed forms; an observable Hamiltonian uses Lie-series stepping."""

    if not t_max > 0:
        raise ValueError(f"Invalid t_max {t_max}")
    if resolution < 1 or not tol > 0:
        raise ValueError(f"Invalid scan resolution {resolution} or tolerance {tol}")
    ps = _point_set(points, initial.n_c)

    if isinstance(H, SpinOrbit):
        margins = _ClosedFormMargins(initial, H, ps)
    elif isinstance(H, HybridObservable):
        margins = _SeriesMargins(initial, H, ps, order, max_step)
    else:
        raise TypeError(f"Invalid Hamiltonian {H!r}")

    scan = margins(0.0)
    if not scan.positive:
        raise ValueError(f"Initial value is not positive: margin {scan.global_margin:.6g} at {scan.witness}")

    curve = [(0.0, scan.global_margin)]
    dt = t_max / resolution
    lo = 0.0
    for i in range(1, resolution + 1):
        t = i * dt
        scan = margins(t)
        curve.append((t, scan.global_margin))
        if not scan.positive:
            t_star, witness = _bisect(margins, lo, t, scan, tol)
            return ViolationReport(
                t_star=t_star, witness=witness, margin_curve=curve, t_max=t_max, resolution=resolution, tol=tol
            )
        margins.advance(t)
        lo = t

    return ViolationReport(t_star=None, witness=None, margin_curve=curve, t_max=t_max, resolution=resolution, tol=tol)


def _bisect(margins, lo: float, hi: float, hi_scan: PositivityScan, tol: float) -> Tuple[float, PhasePoint]:
    """Shrink [lo, hi] with positive margin at `lo` and negative at `hi` to width `tol`"""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        scan = margins(mid)
        if scan.positive:
            margins.advance(mid)
            lo = mid
        else:
            hi, hi_scan = mid, scan
    return hi, hi_scan.witness


def violation_time(
    initial: Evolvable, H: Union[SpinOrbit, HybridObservable], points: Points, t_max: float, **kwargs
) -> Optional[float]:
    """# Violation Time
    Smallest t* in (0, t_max] with a negative global margin, or None. See `violation_scan`."""
    return violation_scan(initial, H, points, t_max, **kwargs).t_star


# Bundled cases


@datatype
class PositivityCase:
    """An initial observable or state with its Hamiltonian, sample points and scan horizon"""

    name: str
    initial: Evolvable
    hamiltonian: Union[SpinOrbit, HybridObservable]
    points: PointSet
    t_max: float
    expect_violation: bool

    def scan(self, **kwargs) -> ViolationReport:
        return violation_scan(self.initial, self.hamiltonian, self.points, self.t_max, **kwargs)


def heisenberg_counterexample(count: int = 200, g: float = 1.0, hbar: float = 1.0) -> PositivityCase:
    """A(0) = 2 + x₁ under H = g L·S, on points with |x|, |k| ≤ 2.
    The g t (h·L/L²) L term of b(t) grows linearly, eventually exceeding a."""
    basis = build_basis(2, hbar)
    x1 = PhasePolynomial.xs(N_C)[0]
    points = PointSet.halton(N_C, count, max_x=2.0, max_k=2.0, l_window=(1e-3, np.inf))
    return PositivityCase(
        name="heisenberg",
        initial=HybridObservable.classical(basis, x1 + 2.0),
        hamiltonian=SpinOrbit(g=g),
        points=points,
        t_max=20.0 / g,
        expect_violation=True,
    )


def schrodinger_counterexample(count: int = 64, g: float = 1.0, hbar: float = 1.0) -> PositivityCase:
    """ρ ∝ (1.2 + 2 S_z)·envelope under H = g x₁ S_z.
    The polynomial margin 0.2 drifts as −g t (k₁ − k̄₁)/(2s²) and turns negative where k₁ > k̄₁.
    Starting 0.2 above the touching point makes the detected t* a strict crossing:
    a margin of exactly zero counts as positive, so a touching start would tie with rounding at t = 0."""
    basis = build_basis(2, hbar)
    n_c = N_C
    const = lambda v: PhasePolynomial.constant(n_c, v)
    rho = DensityField.gaussian(basis, const(1.2), [const(0.0), const(0.0), const(2.0 / hbar)])
    H = HybridObservable.generator(basis, 2, PhasePolynomial.xs(n_c)[0] * g)
    return PositivityCase(
        name="schrodinger",
        initial=rho,
        hamiltonian=H,
        points=PointSet.halton(n_c, count),
        t_max=20.0 / g,
        expect_violation=True,
    )


def quantal_control(count: int = 64, hbar: float = 1.0) -> PositivityCase:
    """Constant ρ ∝ 1 + 0.5 S_z under a constant H = h·S: β precesses, its norm is kept"""
    basis = build_basis(2, hbar)
    const = lambda v: PhasePolynomial.constant(N_C, v)
    rho = DensityField.gaussian(basis, const(1.0), [const(0.0), const(0.0), const(0.5)])
    H = HybridObservable.quantal(basis, N_C, [0.3, -0.2, 0.5])
    return PositivityCase(
        name="quantal-control",
        initial=rho,
        hamiltonian=H,
        points=PointSet.halton(N_C, count),
        t_max=20.0,
        expect_violation=False,
    )


def classical_control(count: int = 64, hbar: float = 1.0) -> PositivityCase:
    """A = 1 + x₁² under H = k₁²/2: A(t) = 1 + (x₁ + t k₁)² stays above one"""
    basis = build_basis(2, hbar)
    x, k = PhasePolynomial.xs(1)[0], PhasePolynomial.ks(1)[0]
    return PositivityCase(
        name="classical-control",
        initial=HybridObservable.classical(basis, x * x + 1.0),
        hamiltonian=HybridObservable.classical(basis, k * k * 0.5),
        points=PointSet.halton(1, count),
        t_max=20.0,
        expect_violation=False,
    )


# L-only dynamics


@datatype
class LOnlySearch:
    """# L-Only Positivity Search
    The most negative margin found over random positive L-only observables.
    `found` is set when some trial went negative."""

    found: bool
    best_margin: float
    trial: int
    t: float
    witness_L: Tuple[float, float, float]
    trials: int
    seed: int


def l_only_violation_search(
    seed: int = 0,
    trials: int = 50,
    points: int = 128,
    *,
    g: float = 1.0,
    t_max: float = 20.0,
    resolution: int = DEFAULT_RESOLUTION,
    degree: int = 2,
    hbar: float = 1.0,
) -> LOnlySearch:
    """# L-Only Violation Search
    Random a(L) (degree ≤ `degree`) and b(L) (degree ≤ 1), shifted so the initial margin is
    0.1 on the samples, evolved by the L-only closed form over a time grid."""

    rng = np.random.default_rng(seed)
    L = PointSet.halton(N_C, points, l_window=(0.1, np.inf)).angular_momentum()
    times = np.linspace(0.0, t_max, resolution + 1)[1:]

    def random_poly(deg: int) -> Polynomial:
        exps = monomials(3, deg)
        return Polynomial(3, dict(zip(exps, rng.uniform(-1, 1, size=len(exps)))))

    best = None
    for trial in range(trials):
        a = random_poly(degree)
        b = [random_poly(1) for _ in range(3)]
        start = spin_orbit_closed_form_L_only(a, b, g, 0.0, L)
        a = a + (0.1 - _spin_margins(start.scalar, start.vector, hbar).min())
        for t in times:
            comps = spin_orbit_closed_form_L_only(a, b, g, t, L)
            margins = _spin_margins(comps.scalar, comps.vector, hbar)
            idx = int(np.argmin(margins))
            if best is None or margins[idx] < best[0]:
                best = (float(margins[idx]), trial, float(t), tuple(float(v) for v in L[idx]))

    margin, trial, t, witness = best
    return LOnlySearch(
        found=margin < 0, best_margin=margin, trial=trial, t=t, witness_L=witness, trials=trials, seed=seed
    )
