"""
# Bracket Witnesses

Concrete inputs on which the rival brackets fail: a Jacobi-identity witness for the
standard bracket, and an antisymmetry witness for the Anderson bracket.
"""

# Std-Lib Imports
from typing import Optional, Tuple

# PyPi Imports
import numpy as np

# Local Imports
from ..datatype import datatype
from ..su import SuBasis
from ..classical import PhasePolynomial
from ..instances import random_observable
from .observable import HybridObservable
from .brackets import BracketKind, BracketSpec, anderson_bracket, jacobi_residual


@datatype
class JacobiWitness:
    """# Jacobi Witness
    A triple with its cyclic-sum residual under `kind`.
    `seed` and `trial` are set when the triple came from `find_jacobi_witness`."""

    kind: str
    residual: float
    A: HybridObservable
    B: HybridObservable
    C: HybridObservable
    seed: Optional[int] = None
    trial: Optional[int] = None

    @property
    def triple(self) -> Tuple[HybridObservable, HybridObservable, HybridObservable]:
        return (self.A, self.B, self.C)


def _kind_name(kind: BracketSpec) -> str:
    if isinstance(kind, BracketKind):
        return kind.value
    return f"ansatz({kind.alpha:g},{kind.beta:g},{kind.gamma:g})"


def standard_jacobi_witness(basis: SuBasis) -> JacobiWitness:
    """# Stored Standard-Bracket Witness
    (x²q₁, k²q₂, xk q₂) with n_c = 1. The standard bracket carries a (ħ²/2n)Σ{Aᵢ,Bᵢ}𝟙
    term which spoils the cyclic sum by −8(ħ²/2n)·xk q₁: residual 2ħ² for n = 2."""
    x, k = PhasePolynomial.xs(1)[0], PhasePolynomial.ks(1)[0]
    A = HybridObservable.generator(basis, 0, x * x)
    B = HybridObservable.generator(basis, 1, k * k)
    C = HybridObservable.generator(basis, 1, x * k)
    kind = BracketKind.STANDARD
    return JacobiWitness(kind=kind.value, residual=jacobi_residual(kind, A, B, C), A=A, B=B, C=C)


def anderson_antisymmetry_witness(basis: SuBasis) -> HybridObservable:
    """(x₁q₁, k₁q₂) + (k₁q₂, x₁q₁) under the Anderson bracket: [q₁, q₂] = iħ f₁₂ₖ qₖ, nonzero"""
    x, k = PhasePolynomial.xs(1)[0], PhasePolynomial.ks(1)[0]
    A = HybridObservable.generator(basis, 0, x)
    B = HybridObservable.generator(basis, 1, k)
    return anderson_bracket(A, B) + anderson_bracket(B, A)


def find_jacobi_witness(
    kind: BracketSpec,
    basis: SuBasis,
    *,
    n_c: int = 1,
    trials: int = 1000,
    degree: int = 2,
    seed: int = 0,
) -> JacobiWitness:
    """# Jacobi Witness Search
    Draw `trials` seeded random triples and keep the one with the largest cyclic-sum residual."""
    if trials < 1:
        raise ValueError(f"Invalid trial count {trials}")
    rng = np.random.default_rng(seed)
    best = None
    for trial in range(trials):
        A, B, C = (random_observable(rng, basis, n_c, degree) for _ in range(3))
        residual = jacobi_residual(kind, A, B, C)
        if best is None or residual > best[0]:
            best = (residual, trial, A, B, C)
    residual, trial, A, B, C = best
    return JacobiWitness(
        kind=_kind_name(kind), residual=residual, A=A, B=B, C=C, seed=seed, trial=trial
    )
