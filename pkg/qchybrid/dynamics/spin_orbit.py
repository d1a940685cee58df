"""
# Spin-Orbit Closed Forms

Pointwise solutions of the spin-orbit dynamics H = g L·S (infinite mass), in both pictures.
Writing A = a + b·S and ρ = α + β·S:

Heisenberg:   a(t) = a(0)
              b(t) = R b(0) + g t (h·L/L²) L + (R − 1)(L × h)/L²,   hᵢ = {a, Lᵢ}

Schrödinger:  β(t) = M β(0),   M = R⁻¹
              α(t) = α(0) + (ħ²/4L²) [2(1 − cos g t|L|)(L·β(0)) + Σᵢⱼ (g t LᵢLⱼ − ((M − 1)K)ᵢⱼ) hᵢⱼ]
              with hᵢⱼ = {Lᵢ, βⱼ(0)} and K the cross-product matrix of L.

R is the pointwise rotation of `RotationField`. The formulas are singular at L = 0;
points with |L| ≤ `EPS_L` are rejected.
"""

# Std-Lib Imports
from typing import Sequence, Tuple
from warnings import warn

# PyPi Imports
import numpy as np

# Local Imports
from ..datatype import datatype
from ..su import SuBasis
from ..classical import Polynomial, PointSet, poisson_bracket, poisson_bracket_state
from ..classical.point import Points, as_array
from ..hybrid import DensityField, HybridObservable
from ..models import N_C, SpinOrbit, angular_momentum, angular_momentum_values
from .rotation import RotationField

EPS_L = 1e-8


class SingularPointWarning(UserWarning):
    """Evaluation points near the |L| = 0 locus were dropped"""


@datatype
class SpinComponents:
    """# Spin Components
    Pointwise values of a + b·S: `scalar` of shape (m,), `vector` of shape (m, 3)."""

    scalar: np.ndarray
    vector: np.ndarray

    def matrices(self, basis: SuBasis) -> np.ndarray:
        """(m, 2, 2) operator values"""
        if basis.n != 2:
            raise ValueError(f"Spin components require a spin-½ basis, got n={basis.n}")
        eye = np.eye(2)[None, :, :]
        return self.scalar[:, None, None] * eye + np.einsum("mi,iab->mab", self.vector, basis.q_array)


def split_singular(points: Points, eps: float = EPS_L) -> Tuple[PointSet, int]:
    """Drop points with |L| ≤ `eps`, warning with the count dropped"""
    arr = as_array(points, N_C)
    keep = np.linalg.norm(angular_momentum_values(arr), axis=1) > eps
    dropped = int((~keep).sum())
    if dropped:
        warn(f"Dropped {dropped} point(s) with |L| <= {eps:g}", SingularPointWarning, stacklevel=2)
    return PointSet(N_C, arr[keep]), dropped


def _regular_momenta(L: np.ndarray, eps: float) -> np.ndarray:
    L = np.atleast_2d(np.asarray(L, dtype=float))
    if L.shape[1] != 3:
        raise ValueError(f"Angular momenta must have three components, got shape {L.shape}")
    norms = np.linalg.norm(L, axis=1)
    if np.any(norms <= eps):
        bad = int(np.argmax(norms <= eps))
        raise ValueError(f"Closed form is singular at |L| <= {eps:g}: point {bad} has |L| = {norms[bad]:g}")
    return L


def _kernel(L: np.ndarray, g: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """Rotations R_t and |L|² at each point"""
    return RotationField(g, t).from_momenta(L), np.sum(L * L, axis=1)


def _apply(mats: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    return np.einsum("mij,mj->mi", mats, vecs)


def _cross_matrices(L: np.ndarray) -> np.ndarray:
    """K with K v = L × v, i.e. K_lj = ε_lmj L_m"""
    K = np.zeros((L.shape[0], 3, 3))
    K[:, 0, 1], K[:, 0, 2] = -L[:, 2], L[:, 1]
    K[:, 1, 0], K[:, 1, 2] = L[:, 2], -L[:, 0]
    K[:, 2, 0], K[:, 2, 1] = -L[:, 1], L[:, 0]
    return K


def _coupling(g) -> float:
    if isinstance(g, SpinOrbit):
        if g.has_kinetic:
            raise ValueError("Spin-orbit closed forms treat the infinite-mass model only; use the Lie series")
        return g.g
    return float(g)


def _check_model_basis(basis: SuBasis, n_c: int) -> None:
    if basis.n != 2 or n_c != N_C:
        raise ValueError(f"Spin-orbit closed forms require n=2 and n_c={N_C}, got n={basis.n}, n_c={n_c}")


def heisenberg_components(A0: HybridObservable, g, t: float, points: Points, eps: float = EPS_L) -> SpinComponents:
    """Pointwise a(t), b(t) for observable `A0`"""
    _check_model_basis(A0.basis, A0.n_c)
    g = _coupling(g)
    arr = as_array(points, N_C)
    L = _regular_momenta(angular_momentum_values(arr), eps)
    R, L2 = _kernel(L, g, t)

    a = np.real_if_close(A0.a0.evaluate(arr))
    b0 = np.stack([b.evaluate(arr) for b in A0.avec], axis=1)
    h = np.stack([poisson_bracket(A0.a0, l).evaluate(arr) for l in angular_momentum()], axis=1)

    b = _apply(R, b0)
    b = b + (g * t * np.sum(h * L, axis=1) / L2)[:, None] * L
    b = b + _apply(R - np.eye(3)[None], np.cross(L, h)) / L2[:, None]
    return SpinComponents(scalar=a, vector=b)


def spin_orbit_closed_form(A0: HybridObservable, g, t: float, points: Points, eps: float = EPS_L) -> np.ndarray:
    """# Heisenberg Spin-Orbit Closed Form
    (m, 2, 2) values of A(t) at each point. `g` is a coupling or a `SpinOrbit` model."""
    return heisenberg_components(A0, g, t, points, eps).matrices(A0.basis)


def spin_orbit_closed_form_L_only(
    a: Polynomial, b: Sequence[Polynomial], g, t: float, L: np.ndarray, eps: float = EPS_L
) -> SpinComponents:
    """# L-Only Heisenberg Closed Form
    For a, b functions of L alone (polynomials in L₁, L₂, L₃): b(t) = ∇a + R(b(0) − ∇a)."""
    _check_L_inputs(a, b)
    g = _coupling(g)
    L = _regular_momenta(L, eps)
    R, _ = _kernel(L, g, t)
    grad = np.stack([d.evaluate(L) for d in a.gradient()], axis=1)
    b0 = np.stack([p.evaluate(L) for p in b], axis=1)
    return SpinComponents(scalar=np.asarray(a.evaluate(L)), vector=grad + _apply(R, b0 - grad))


def _check_L_inputs(a: Polynomial, b: Sequence[Polynomial]) -> None:
    if len(b) != 3:
        raise ValueError(f"Expected three vector components, got {len(b)}")
    for p in [a, *b]:
        if not isinstance(p, Polynomial) or p.nvars != 3:
            raise ValueError(f"L-only closed forms require polynomials in (L1, L2, L3), got {p!r}")


def _alpha_shift(
    L: np.ndarray, L2: np.ndarray, M: np.ndarray, g: float, t: float, L_dot_beta: np.ndarray, h: np.ndarray, hbar: float
) -> np.ndarray:
    c = hbar**2 / 4
    cos = np.cos(g * t * np.sqrt(L2))
    weights = g * t * L[:, :, None] * L[:, None, :] - np.einsum("mia,maj->mij", M - np.eye(3)[None], _cross_matrices(L))
    return c / L2 * (2 * (1 - cos) * L_dot_beta + np.einsum("mij,mij->m", weights, h))


def schrodinger_components(rho0: DensityField, g, t: float, points: Points, eps: float = EPS_L) -> SpinComponents:
    """Pointwise α(t), β(t) for state `rho0`, envelope included"""
    _check_model_basis(rho0.basis, rho0.n_c)
    g = _coupling(g)
    arr = as_array(points, N_C)
    L = _regular_momenta(angular_momentum_values(arr), eps)
    R, L2 = _kernel(L, g, t)
    M = np.transpose(R, (0, 2, 1))

    alpha0 = rho0.rho0.evaluate(arr)
    beta0 = np.stack([f.evaluate(arr) for f in rho0.rvec], axis=1)
    h = np.stack(
        [np.stack([poisson_bracket_state(l, f).evaluate(arr) for f in rho0.rvec], axis=1) for l in angular_momentum()],
        axis=1,
    )
    L_dot_beta = np.sum(L * beta0, axis=1)
    alpha = alpha0 + _alpha_shift(L, L2, M, g, t, L_dot_beta, h, rho0.basis.hbar)
    return SpinComponents(scalar=alpha, vector=_apply(M, beta0))


def spin_orbit_schrodinger_closed_form(rho0: DensityField, g, t: float, points: Points, eps: float = EPS_L) -> np.ndarray:
    """# Schrödinger Spin-Orbit Closed Form
    (m, 2, 2) values of ρ(t) at each point, envelope included."""
    return schrodinger_components(rho0, g, t, points, eps).matrices(rho0.basis)


def spin_orbit_schrodinger_L_only(
    alpha: Polynomial, beta: Sequence[Polynomial], g, t: float, L: np.ndarray, hbar: float = 1.0, eps: float = EPS_L
) -> SpinComponents:
    """# L-Only Schrödinger Closed Form
    For α, β polynomials in L: β(t) = Mβ(0) and
    α(t) = α(0) + (ħ²/4)[(M − 1)ᵢⱼ ∂ᵢβⱼ + 2(1 − cos g t|L|)(L·β)/L²], derivatives in L."""
    _check_L_inputs(alpha, beta)
    g = _coupling(g)
    L = _regular_momenta(L, eps)
    R, L2 = _kernel(L, g, t)
    M = np.transpose(R, (0, 2, 1))

    beta0 = np.stack([p.evaluate(L) for p in beta], axis=1)
    # jac[m, i, j] = ∂βⱼ/∂Lᵢ
    jac = np.stack([np.stack([p.derivative(i).evaluate(L) for p in beta], axis=1) for i in range(3)], axis=1)
    cos = np.cos(g * t * np.sqrt(L2))
    div = np.einsum("mij,mij->m", M - np.eye(3)[None], jac)
    shift = (hbar**2 / 4) * (div + 2 * (1 - cos) * np.sum(L * beta0, axis=1) / L2)
    return SpinComponents(scalar=alpha.evaluate(L) + shift, vector=_apply(M, beta0))
