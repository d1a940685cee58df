"""
# Hybrid Brackets

* `heisenberg_bracket`: the canonical hybrid Lie bracket on observables
* `schrodinger_bracket`: its adjoint, acting on density fields
* `ansatz_bracket`: the (α, β, γ) family containing the canonical bracket at (0, 1, 0)
* `standard_bracket`, `anderson_bracket`: rival brackets mixing operator products with
  Poisson brackets, kept as negative controls

All brackets act on coefficient form. Writing A = A₀ + Aᵢqᵢ, B = B₀ + Bⱼqⱼ,
the ansatz bracket splits into four channels:

    postulate:  {A₀,B₀} + ({A₀,Bₖ} + {Aₖ,B₀}) qₖ
    delta:      Σᵢ {Aᵢ,Bᵢ}                      (multiple of 𝟙)
    f:          fᵢⱼₖ AᵢBⱼ qₖ
    d:          dᵢⱼₖ {Aᵢ,Bⱼ} qₖ

and (A, B) = postulate + α·delta + β·f + γ·d.
"""

# Std-Lib Imports
from enum import Enum
from typing import Callable, List, Sequence, Tuple, Union

# PyPi Imports
import numpy as np

# Local Imports
from ..datatype import datatype
from ..classical import (
    GaussianField,
    PhasePolynomial,
    gaussian_sum,
    poisson_bracket,
    poisson_bracket_state,
    polynomial_sum,
)
from .observable import HybridObservable, contract, operator_product
from .density import DensityField


class BracketKind(Enum):
    """# Enumerated Bracket Kinds
    The fixed brackets. Members of the ansatz family are described by `Ansatz`."""

    CANONICAL = "canonical"
    STANDARD = "standard"
    ANDERSON = "anderson"

    @classmethod
    def default(cls) -> "BracketKind":
        return BracketKind.CANONICAL


@datatype
class Ansatz:
    """# Ansatz Bracket Parameters
    The bracket postulate + α·delta + β·f + γ·d. (0, 1, 0) is the canonical bracket."""

    alpha: float = 0.0
    beta: float = 1.0
    gamma: float = 0.0

    def __call__(self, A: HybridObservable, B: HybridObservable) -> HybridObservable:
        return ansatz_bracket(A, B, self.alpha, self.beta, self.gamma)


BracketSpec = Union[BracketKind, Ansatz]


def _sum(items: list, like):
    if isinstance(like, GaussianField):
        return gaussian_sum(items, like)
    return polynomial_sum(items, like)


def _mul(a: PhasePolynomial, b: PhasePolynomial) -> PhasePolynomial:
    return a * b


def _assemble(basis, like, scalar: list, vec: Sequence[list]) -> HybridObservable:
    return HybridObservable(basis, _sum(scalar, like), [_sum(v, like) for v in vec])


# Channels


def _postulate_terms(A: HybridObservable, B: HybridObservable) -> Tuple[list, List[list]]:
    scalar = [poisson_bracket(A.a0, B.a0)]
    vec = [[poisson_bracket(A.a0, b), poisson_bracket(a, B.a0)] for a, b in zip(A.avec, B.avec)]
    return scalar, vec


def _delta_terms(A: HybridObservable, B: HybridObservable) -> list:
    return [poisson_bracket(a, b) for a, b in zip(A.avec, B.avec)]


def _f_terms(A: HybridObservable, B: HybridObservable) -> List[list]:
    return contract(A.basis.structure.f, A.avec, B.avec, _mul)


def _d_terms(A: HybridObservable, B: HybridObservable) -> List[list]:
    return contract(A.basis.structure.d, A.avec, B.avec, poisson_bracket)


@datatype
class BracketChannels:
    """The four channels of the ansatz bracket, each as an observable"""

    postulate: HybridObservable
    delta: HybridObservable
    f: HybridObservable
    d: HybridObservable

    def combine(self, alpha: float, beta: float, gamma: float) -> HybridObservable:
        return self.postulate + self.delta * alpha + self.f * beta + self.d * gamma


def bracket_channels(A: HybridObservable, B: HybridObservable) -> BracketChannels:
    A.check_compatible(B)
    basis, like = A.basis, A.a0.zero()
    empty = [[] for _ in range(basis.size)]
    scalar, vec = _postulate_terms(A, B)
    return BracketChannels(
        postulate=_assemble(basis, like, scalar, vec),
        delta=_assemble(basis, like, _delta_terms(A, B), empty),
        f=_assemble(basis, like, [], _f_terms(A, B)),
        d=_assemble(basis, like, [], _d_terms(A, B)),
    )


# Brackets


def heisenberg_bracket(A: HybridObservable, B: HybridObservable) -> HybridObservable:
    """# Canonical Hybrid Bracket
    (A, B) = {A₀,B₀} + ({A₀,Bₖ} + {Aₖ,B₀} + fᵢⱼₖAᵢBⱼ) qₖ"""
    A.check_compatible(B)
    scalar, vec = _postulate_terms(A, B)
    for k, terms in enumerate(_f_terms(A, B)):
        vec[k] += terms
    return _assemble(A.basis, A.a0.zero(), scalar, vec)


def ansatz_bracket(
    A: HybridObservable, B: HybridObservable, alpha: float, beta: float, gamma: float
) -> HybridObservable:
    """# Ansatz Bracket
    (Cqᵢ, C′qⱼ) = α{C,C′}δᵢⱼ𝟙 + βCC′fᵢⱼₖqₖ + γ{C,C′}dᵢⱼₖqₖ, plus the postulate terms."""
    A.check_compatible(B)
    scalar, vec = _postulate_terms(A, B)
    if alpha:
        scalar += [p.scale(alpha) for p in _delta_terms(A, B)]
    for coeff, terms_fn in ((beta, _f_terms), (gamma, _d_terms)):
        if coeff:
            for k, terms in enumerate(terms_fn(A, B)):
                vec[k] += [p.scale(coeff) for p in terms]
    return _assemble(A.basis, A.a0.zero(), scalar, vec)


def poisson_operator_product(A: HybridObservable, B: HybridObservable) -> HybridObservable:
    """Σᵥ (∂A/∂xᵥ · ∂B/∂kᵥ − ∂A/∂kᵥ · ∂B/∂xᵥ), with operator products in the given order"""
    A.check_compatible(B)
    n = A.n_c
    rv = HybridObservable.zero(A.basis, n)
    for v in range(n):
        rv = rv + operator_product(A.derivative(v), B.derivative(n + v))
        rv = rv - operator_product(A.derivative(n + v), B.derivative(v))
    return rv


def commutator_part(A: HybridObservable, B: HybridObservable) -> HybridObservable:
    """[A, B]/(iħ). Classical coefficients commute, leaving fᵢⱼₖAᵢBⱼqₖ."""
    A.check_compatible(B)
    return _assemble(A.basis, A.a0.zero(), [], _f_terms(A, B))


def standard_bracket(A: HybridObservable, B: HybridObservable) -> HybridObservable:
    """# Standard (Symmetrized) Hybrid Bracket
    (A, B)_q + ½(P(A, B) − P(B, A)), with P the Poisson form using operator products.
    Antisymmetric, but not a Lie bracket."""
    sym = (poisson_operator_product(A, B) - poisson_operator_product(B, A)) * 0.5
    return (commutator_part(A, B) + sym).realified()


def anderson_bracket(A: HybridObservable, B: HybridObservable) -> HybridObservable:
    """# Anderson Hybrid Bracket
    (A, B)_q + P(A, B). Not antisymmetric; complex coefficients in general."""
    return commutator_part(A, B) + poisson_operator_product(A, B)


def schrodinger_bracket(H: HybridObservable, rho: Union[DensityField, HybridObservable]):
    """# Schrödinger-Picture Bracket
    (H, ρ)′ = {H₀,ρ₀} + (ħ²/2n) Σᵢ {Hᵢ,ρᵢ} + ({H₀,ρₖ} + fᵢⱼₖHᵢρⱼ) qₖ.
    Unlike the canonical bracket there is no {Hₖ,ρ₀}qₖ term.
    Accepts a `DensityField`, returning an unchecked `DensityField` increment,
    or an observable-shaped `HybridObservable`, returning the same."""

    if isinstance(rho, DensityField):
        if not H.basis.same_as(rho.basis):
            raise ValueError(f"Basis mismatch: {H.basis} vs {rho.basis}")
        if H.n_c != rho.n_c:
            raise ValueError(f"Classical dimension mismatch: n_c={H.n_c} vs n_c={rho.n_c}")
        pb, r0, rv = poisson_bracket_state, rho.rho0, rho.rvec
    elif isinstance(rho, HybridObservable):
        H.check_compatible(rho)
        pb, r0, rv = poisson_bracket, rho.a0, rho.avec
    else:
        raise TypeError(f"Invalid Schrödinger bracket argument {type(rho).__name__}")

    basis = H.basis
    like = r0.zero()
    c = basis.structure.identity_coefficient(basis.hbar)

    scalar = [pb(H.a0, r0)] + [pb(h, r) * c for h, r in zip(H.avec, rv)]
    acc = contract(basis.structure.f, H.avec, rv, lambda h, r: r * h)
    vec = [_sum([pb(H.a0, rv[k])] + acc[k], like) for k in range(basis.size)]

    if isinstance(rho, DensityField):
        return DensityField(basis, _sum(scalar, like), vec, check=False)
    return HybridObservable(basis, _sum(scalar, like), vec)


def bracket_function(kind: BracketSpec) -> Callable[[HybridObservable, HybridObservable], HybridObservable]:
    """The bracket implementing `kind`"""
    if isinstance(kind, Ansatz):
        return kind
    if kind == BracketKind.CANONICAL:
        return heisenberg_bracket
    if kind == BracketKind.STANDARD:
        return standard_bracket
    if kind == BracketKind.ANDERSON:
        return anderson_bracket
    raise TypeError(f"Invalid bracket kind {kind!r}")


def cyclic_sum(kind: BracketSpec, A: HybridObservable, B: HybridObservable, C: HybridObservable) -> HybridObservable:
    """(A,(B,C)) + (B,(C,A)) + (C,(A,B))"""
    br = bracket_function(kind)
    return br(A, br(B, C)) + br(B, br(C, A)) + br(C, br(A, B))


def jacobi_residual(kind: BracketSpec, A: HybridObservable, B: HybridObservable, C: HybridObservable) -> float:
    """# Jacobi Residual
    Largest absolute coefficient of the cyclic sum. Always computed, for every kind."""
    return cyclic_sum(kind, A, B, C).norm()


def residual_scale(*items) -> float:
    """Tolerance scale for identity checks: the largest input coefficient magnitude, at least one"""
    return max([1.0] + [x.norm() for x in items])


def leibniz_expand(
    A: HybridObservable,
    factors: Sequence[Tuple[HybridObservable, HybridObservable]],
    bracket: Callable = heisenberg_bracket,
) -> HybridObservable:
    """Σⱼ [(A, Bⱼ)·Cⱼ + Bⱼ·(A, Cⱼ)]: the bracket (A, Σⱼ BⱼCⱼ) as a derivation would give it"""
    if not factors:
        raise ValueError("leibniz_expand requires at least one factor pair")
    rv = HybridObservable.zero(A.basis, A.n_c)
    for B, C in factors:
        rv = rv + operator_product(bracket(A, B), C) + operator_product(B, bracket(A, C))
    return rv


def pairing(X: HybridObservable, rho: DensityField) -> complex:
    """∫ tr(Xρ) = ∫ (n X₀ρ₀ + Σᵢⱼ Xᵢρⱼ tr(qᵢqⱼ)), with tr(qᵢqⱼ) = (ħ²/2)δᵢⱼ. No normalization is assumed."""
    if not X.basis.same_as(rho.basis):
        raise ValueError(f"Basis mismatch: {X.basis} vs {rho.basis}")
    if X.n_c != rho.n_c:
        raise ValueError(f"Classical dimension mismatch: n_c={X.n_c} vs n_c={rho.n_c}")
    basis = X.basis
    total = basis.n * (rho.rho0 * X.a0).integrate()
    weight = basis.hbar**2 / 2
    for x, r in zip(X.avec, rho.rvec):
        if not x.is_zero and not r.is_zero:
            total += weight * (r * x).integrate()
    return total


def adjoint_identity_residual(A: HybridObservable, H: HybridObservable, rho: DensityField) -> float:
    """# Adjoint Identity Residual
    |⟪A·(H, ρ)′⟫ − ⟪(A, H)·ρ⟫|"""
    lhs = pairing(A, schrodinger_bracket(H, rho))
    rhs = pairing(heisenberg_bracket(A, H), rho)
    return float(abs(lhs - rhs))
