"""
# Hybrid Observables

A = A₀𝟙 + Σᵢ Aᵢ qᵢ: a classical part plus one phase-space polynomial per su(n) generator.
"""

# Std-Lib Imports
from numbers import Number
from typing import Callable, List, Mapping, Optional, Sequence

# PyPi Imports
import numpy as np

# Local Imports
from ..su import SuBasis, QuantumOperator, expand_in_basis
from ..classical import PhasePolynomial, polynomial_sum
from ..classical.point import Points, as_array


def contract(T: np.ndarray, left: Sequence, right: Sequence, op: Callable) -> List[list]:
    """Σᵢⱼ Tᵢⱼₖ op(leftᵢ, rightⱼ), returned per k as lists of un-summed terms.
    Each nonzero op(leftᵢ, rightⱼ) is computed once and shared among its k."""
    size = T.shape[2]
    acc = [[] for _ in range(size)]
    nz = T != 0
    for i, j in zip(*np.nonzero(nz.any(axis=2))):
        if left[i].is_zero or right[j].is_zero:
            continue
        p = op(left[i], right[j])
        if p.is_zero:
            continue
        for k in np.nonzero(nz[i, j])[0]:
            acc[k].append(p * T[i, j, k])
    return acc


class HybridObservable:
    """
    # Hybrid Observable

    Classical part `a0` and coefficient polynomials `avec` over the basis generators qᵢ.
    Real coefficients make the observable Hermitian; complex coefficients arise only
    internally, e.g. from operator products.
    """

    __slots__ = ("basis", "a0", "avec")

    def __init__(self, basis: SuBasis, a0: PhasePolynomial, avec: Sequence[PhasePolynomial]):
        if not isinstance(basis, SuBasis):
            raise TypeError(f"Invalid basis {basis!r}")
        if not isinstance(a0, PhasePolynomial):
            raise TypeError(f"Classical part must be a PhasePolynomial, got {type(a0).__name__}")
        avec = tuple(avec)
        if len(avec) != basis.size:
            raise ValueError(f"Expected {basis.size} coefficient polynomials for n={basis.n}, got {len(avec)}")
        for a in avec:
            if not isinstance(a, PhasePolynomial):
                raise TypeError(f"Coefficients must be PhasePolynomials, got {type(a).__name__}")
            if a.n_c != a0.n_c:
                raise ValueError(f"Coefficient dimension mismatch: n_c={a.n_c} vs n_c={a0.n_c}")
        self.basis = basis
        self.a0 = a0
        self.avec = avec

    # Constructors

    @classmethod
    def zero(cls, basis: SuBasis, n_c: int) -> "HybridObservable":
        z = PhasePolynomial.zeros(n_c)
        return cls(basis, z, [z] * basis.size)

    @classmethod
    def identity(cls, basis: SuBasis, n_c: int) -> "HybridObservable":
        return cls.classical(basis, PhasePolynomial.constant(n_c, 1.0))

    @classmethod
    def classical(cls, basis: SuBasis, C: PhasePolynomial) -> "HybridObservable":
        """C𝟙"""
        z = C.zero()
        return cls(basis, C, [z] * basis.size)

    @classmethod
    def generator(cls, basis: SuBasis, index: int, coeff: PhasePolynomial) -> "HybridObservable":
        """coeff·q_index"""
        z = coeff.zero()
        avec = [z] * basis.size
        avec[index] = coeff
        return cls(basis, z, avec)

    @classmethod
    def quantal(cls, basis: SuBasis, n_c: int, coeffs: Sequence[complex], scalar: complex = 0.0) -> "HybridObservable":
        """Constant operator scalar·𝟙 + Σ coeffsᵢ qᵢ"""
        if len(coeffs) != basis.size:
            raise ValueError(f"Expected {basis.size} coefficients, got {len(coeffs)}")
        const = lambda c: PhasePolynomial.constant(n_c, c)
        return cls(basis, const(scalar), [const(c) for c in coeffs])

    @classmethod
    def from_operator(cls, Q: QuantumOperator, basis: SuBasis, n_c: int) -> "HybridObservable":
        scalar, coeffs = expand_in_basis(Q, basis)
        return cls.quantal(basis, n_c, [complex(c) for c in coeffs], complex(scalar))

    @classmethod
    def from_components(cls, basis: SuBasis, components: Sequence[PhasePolynomial]) -> "HybridObservable":
        return cls(basis, components[0], components[1:])

    # Inspection

    @property
    def n_c(self) -> int:
        return self.a0.n_c

    @property
    def components(self) -> tuple:
        """(A₀, A₁, ..., A_{n²−1})"""
        return (self.a0,) + self.avec

    @property
    def is_classical(self) -> bool:
        return all(a.is_zero for a in self.avec)

    @property
    def is_quantal(self) -> bool:
        return all(a.is_constant for a in self.components)

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.components)

    def is_hermitian(self, tol: float = 0.0) -> bool:
        return all(a.is_real or a.imag.norm() <= tol for a in self.components)

    def norm(self) -> float:
        """Largest absolute coefficient over all components"""
        return max(a.norm() for a in self.components)

    def allclose(self, other: "HybridObservable", atol: float = 1e-10) -> bool:
        return (self - other).norm() <= atol

    def degree(self) -> int:
        return max(a.degree() for a in self.components)

    def map(self, fn: Callable[[PhasePolynomial], PhasePolynomial]) -> "HybridObservable":
        """Apply `fn` to every component"""
        return HybridObservable(self.basis, fn(self.a0), [fn(a) for a in self.avec])

    @property
    def real(self) -> "HybridObservable":
        return self.map(lambda a: a.real)

    @property
    def imag(self) -> "HybridObservable":
        return self.map(lambda a: a.imag)

    def realified(self, tol: float = 1e-10) -> "HybridObservable":
        """Drop imaginary parts, after checking they are below `tol`"""
        if not self.is_hermitian(tol):
            raise ValueError(f"Observable has imaginary coefficients above {tol}")
        return self.real

    def check_compatible(self, other: "HybridObservable") -> None:
        if not isinstance(other, HybridObservable):
            raise TypeError(f"Expected a HybridObservable, got {type(other).__name__}")
        if not self.basis.same_as(other.basis):
            raise ValueError(f"Basis mismatch: {self.basis} vs {other.basis}")
        if self.n_c != other.n_c:
            raise ValueError(f"Classical dimension mismatch: n_c={self.n_c} vs n_c={other.n_c}")

    # Arithmetic

    def __add__(self, other) -> "HybridObservable":
        if isinstance(other, Number):
            return HybridObservable(self.basis, self.a0 + other, self.avec)
        if not isinstance(other, HybridObservable):
            return NotImplemented
        self.check_compatible(other)
        return HybridObservable(
            self.basis, self.a0 + other.a0, [a + b for a, b in zip(self.avec, other.avec)]
        )

    __radd__ = __add__

    def __neg__(self) -> "HybridObservable":
        return self.map(lambda a: -a)

    def __sub__(self, other) -> "HybridObservable":
        if isinstance(other, (Number, HybridObservable)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "HybridObservable":
        if isinstance(other, Number):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other) -> "HybridObservable":
        if isinstance(other, Number):
            return self.map(lambda a: a.scale(other))
        if isinstance(other, PhasePolynomial):
            return self.map(lambda a: a * other)
        if isinstance(other, HybridObservable):
            return operator_product(self, other)
        return NotImplemented

    def __rmul__(self, other) -> "HybridObservable":
        if isinstance(other, (Number, PhasePolynomial)):
            return self * other
        return NotImplemented

    def __truediv__(self, other) -> "HybridObservable":
        if isinstance(other, Number):
            return self * (1.0 / other)
        return NotImplemented

    # Calculus & Evaluation

    def derivative(self, var: int) -> "HybridObservable":
        return self.map(lambda a: a.derivative(var))

    def to_matrices(self, points: Points) -> np.ndarray:
        """(m, n, n) operator values A(p) at each point"""
        arr = as_array(points, self.n_c)
        scalar = self.a0.evaluate(arr)
        vals = np.stack([a.evaluate(arr) for a in self.avec])
        mats = np.einsum("im,iab->mab", vals, self.basis.q_array)
        return mats + scalar[:, None, None] * np.eye(self.basis.n)[None, :, :]

    def __repr__(self) -> str:
        parts = [f"({self.a0!r})"]
        parts += [f"({a!r})*q{i + 1}" for i, a in enumerate(self.avec) if not a.is_zero]
        return " + ".join(parts)


def operator_product(A: HybridObservable, B: HybridObservable) -> HybridObservable:
    """# Hybrid Operator Product
    AB with classical parts multiplied pointwise and generators by
    qᵢqⱼ = (ħ²/2n)δᵢⱼ𝟙 + (ħ/2)(dᵢⱼₖ + i fᵢⱼₖ)qₖ. Coefficients are complex in general."""
    A.check_compatible(B)
    basis = A.basis
    st = basis.structure
    mul = lambda a, b: a * b
    like = A.a0

    scalar = [A.a0 * B.a0]
    scalar += [(a * b).scale(st.identity_coefficient(basis.hbar)) for a, b in zip(A.avec, B.avec)]
    acc = contract(st.product_tensor(basis.hbar), A.avec, B.avec, mul)
    avec = [
        polynomial_sum([A.a0 * B.avec[k], A.avec[k] * B.a0] + acc[k], like)
        for k in range(basis.size)
    ]
    return HybridObservable(basis, polynomial_sum(scalar, like), avec)
