"""
# Models

The spin-orbit hybrid system: a classical particle in three dimensions with a
quantum spin-½, coupled through H = g L·S (+ k²/2M).
"""

# Std-Lib Imports
from typing import Dict, Optional, Tuple

# PyPi Imports
import numpy as np

# Local Imports
from .datatype import datatype
from .su import SuBasis
from .classical import PhasePolynomial
from .hybrid import HybridObservable

N_C = 3


def angular_momentum(n_c: int = N_C) -> Tuple[PhasePolynomial, PhasePolynomial, PhasePolynomial]:
    """Lᵢ = εᵢⱼₖ xⱼ kₖ"""
    if n_c != N_C:
        raise ValueError(f"Angular momentum requires n_c={N_C}, got n_c={n_c}")
    x, k = PhasePolynomial.xs(n_c), PhasePolynomial.ks(n_c)
    return (
        x[1] * k[2] - x[2] * k[1],
        x[2] * k[0] - x[0] * k[2],
        x[0] * k[1] - x[1] * k[0],
    )


def _check_spin(basis: SuBasis) -> None:
    if basis.n != 2:
        raise ValueError(f"The spin-orbit model requires a spin-½ basis (n=2), got n={basis.n}")


def spin(basis: SuBasis) -> Tuple[HybridObservable, ...]:
    """Sᵢ = (ħ/2)σᵢ, which are exactly the basis generators qᵢ for n = 2"""
    _check_spin(basis)
    one = PhasePolynomial.constant(N_C, 1.0)
    return tuple(HybridObservable.generator(basis, i, one) for i in range(3))


def spin_dot(basis: SuBasis, vec) -> HybridObservable:
    """v·S for a 3-vector of classical polynomials"""
    _check_spin(basis)
    zero = PhasePolynomial.zeros(N_C)
    return HybridObservable(basis, zero, list(vec))


@datatype
class SpinOrbit:
    """# Spin-Orbit Model
    H = g L·S, plus k²/(2·mass) when `mass` is given.
    The closed-form propagators treat only the infinite-mass case."""

    g: float = 1.0
    mass: Optional[float] = None

    def __post_init_post_parse__(self):
        if self.mass is not None and not self.mass > 0:
            raise ValueError(f"Invalid spin-orbit mass {self.mass}, must be positive")

    @property
    def has_kinetic(self) -> bool:
        return self.mass is not None

    def hamiltonian(self, basis: SuBasis) -> HybridObservable:
        L = angular_momentum()
        H = spin_dot(basis, [l * self.g for l in L])
        if self.mass is not None:
            k2 = sum((k * k for k in PhasePolynomial.ks(N_C)), PhasePolynomial.zeros(N_C))
            H = H + HybridObservable.classical(basis, k2 / (2 * self.mass))
        return H

    def observables(self, basis: SuBasis) -> Dict[str, HybridObservable]:
        return observables(basis)


def observables(basis: SuBasis) -> Dict[str, HybridObservable]:
    """# Named Spin-Orbit Observables
    x1..x3, k1..k3, L1..L3, S1..S3 and J1..J3 by component, with the squares
    Lsq = |L|², ksq = |k|², Ssq = S·S and the coupling LS = L·S"""
    _check_spin(basis)
    classical = lambda p: HybridObservable.classical(basis, p)
    x, k = PhasePolynomial.xs(N_C), PhasePolynomial.ks(N_C)
    L = angular_momentum()
    S = spin(basis)

    rv: Dict[str, HybridObservable] = dict()
    for i in range(3):
        rv[f"x{i + 1}"] = classical(x[i])
        rv[f"k{i + 1}"] = classical(k[i])
        rv[f"L{i + 1}"] = classical(L[i])
        rv[f"S{i + 1}"] = S[i]
        rv[f"J{i + 1}"] = classical(L[i]) + S[i]
    rv["Lsq"] = classical(sum((l * l for l in L), PhasePolynomial.zeros(N_C)))
    rv["ksq"] = classical(sum((p * p for p in k), PhasePolynomial.zeros(N_C)))
    rv["LS"] = spin_dot(basis, L)
    # S·S = (3ħ²/4)𝟙 for spin-½
    rv["Ssq"] = classical(PhasePolynomial.constant(N_C, 0.75 * basis.hbar**2))
    return rv


def angular_momentum_values(points: np.ndarray) -> np.ndarray:
    """(m, 3) array of L at an (m, 6) point array"""
    return np.cross(points[:, :N_C], points[:, N_C:])
