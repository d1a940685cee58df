"""
# su(n) Algebra

Generalized Gell-Mann basis, structure constants, and operator-level brackets.

Basis ordering, for matrix indices j < k in row-major order:
* all symmetric pairs     E_jk + E_kj
* all antisymmetric pairs −i E_jk + i E_kj
* the n−1 diagonals       √(2/(l(l+1))) · diag(1, ..., 1, −l, 0, ..., 0),  l = 1..n−1

For n = 2 this is exactly (σx, σy, σz).
"""

# Std-Lib Imports
import math
from functools import cached_property
from numbers import Number
from typing import List, Tuple

# PyPi Imports
import numpy as np

HERMITIAN_TOL = 1e-12


class QuantumOperator:
    """
    # Quantum Operator
    An n×n complex matrix. Immutable.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"QuantumOperator requires a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("Non-finite QuantumOperator entries")
        m.flags.writeable = False
        self.matrix = m

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n: int) -> "QuantumOperator":
        return cls(np.eye(n))

    @property
    def dagger(self) -> "QuantumOperator":
        return QuantumOperator(self.matrix.conj().T)

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return float(np.abs(self.matrix - self.matrix.conj().T).max()) <= tol

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def _check(self, other: "QuantumOperator") -> None:
        if not isinstance(other, QuantumOperator):
            raise TypeError(f"Expected a QuantumOperator, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"Operator dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other) -> "QuantumOperator":
        self._check(other)
        return QuantumOperator(self.matrix + other.matrix)

    def __sub__(self, other) -> "QuantumOperator":
        self._check(other)
        return QuantumOperator(self.matrix - other.matrix)

    def __neg__(self) -> "QuantumOperator":
        return QuantumOperator(-self.matrix)

    def __matmul__(self, other) -> "QuantumOperator":
        self._check(other)
        return QuantumOperator(self.matrix @ other.matrix)

    def __mul__(self, other) -> "QuantumOperator":
        if isinstance(other, Number):
            return QuantumOperator(self.matrix * other)
        return NotImplemented

    __rmul__ = __mul__

    def allclose(self, other: "QuantumOperator", atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.matrix, other.matrix, rtol=0, atol=atol))

    def __repr__(self) -> str:
        return f"QuantumOperator({self.matrix.tolist()})"


class SuBasis:
    """
    # su(n) Basis

    The n²−1 generalized Gell-Mann matrices λᵢ, with tr(λᵢλⱼ) = 2δᵢⱼ,
    and the scaled generators qᵢ = (ħ/2)λᵢ.
    Create with `build_basis`.
    """

    def __init__(self, n: int, hbar: float, lambdas: Tuple[QuantumOperator, ...]):
        self.n = n
        self.hbar = float(hbar)
        self.lambdas = tuple(lambdas)

    @property
    def size(self) -> int:
        """Number of basis elements, n²−1"""
        return len(self.lambdas)

    @cached_property
    def lambda_array(self) -> np.ndarray:
        arr = np.stack([lam.matrix for lam in self.lambdas])
        arr.flags.writeable = False
        return arr

    @cached_property
    def q_array(self) -> np.ndarray:
        """(n²−1, n, n) array of the qᵢ"""
        arr = (self.hbar / 2) * self.lambda_array
        arr.flags.writeable = False
        return arr

    @property
    def qs(self) -> Tuple[QuantumOperator, ...]:
        return tuple(QuantumOperator(q) for q in self.q_array)

    @cached_property
    def structure(self) -> "StructureConstants":
        return structure_constants(self)

    def same_as(self, other: "SuBasis") -> bool:
        return self is other or (self.n == other.n and self.hbar == other.hbar)

    def __repr__(self) -> str:
        return f"SuBasis(n={self.n}, hbar={self.hbar})"


def build_basis(n: int, hbar: float = 1.0) -> SuBasis:
    """# Build the generalized Gell-Mann basis of su(n)"""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"su(n) basis requires integer n >= 2, got {n}. A one-dimensional quantum sector has no qᵢ.")
    if not hbar > 0:
        raise ValueError(f"Invalid hbar {hbar}, must be positive")

    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    mats: List[np.ndarray] = []
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k] = m[k, j] = 1
        mats.append(m)
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k] = -1j
        m[k, j] = 1j
        mats.append(m)
    for l in range(1, n):
        diag = np.zeros(n)
        diag[:l] = 1
        diag[l] = -l
        mats.append(np.diag(diag * math.sqrt(2 / (l * (l + 1)))).astype(complex))

    return SuBasis(n=int(n), hbar=hbar, lambdas=tuple(QuantumOperator(m) for m in mats))


class StructureConstants:
    """
    # su(n) Structure Constants

    Real tensors with λᵢλⱼ = (2/n)δᵢⱼ + (dᵢⱼₖ + i fᵢⱼₖ)λₖ:
    `f` totally antisymmetric, `d` totally symmetric.
    """

    def __init__(self, n: int, f: np.ndarray, d: np.ndarray):
        f.flags.writeable = False
        d.flags.writeable = False
        self.n = n
        self.f = f
        self.d = d

    def product_tensor(self, hbar: float) -> np.ndarray:
        """Coefficients P with qᵢqⱼ = (ħ²/2n)δᵢⱼ𝟙 + Pᵢⱼₖ qₖ, i.e. P = (ħ/2)(d + i f)"""
        return (hbar / 2) * (self.d + 1j * self.f)

    def identity_coefficient(self, hbar: float) -> float:
        """The 𝟙-coefficient (ħ²/2n) of qᵢqᵢ"""
        return hbar**2 / (2 * self.n)


def structure_constants(basis: SuBasis) -> StructureConstants:
    """# Compute f and d
    fᵢⱼₖ = −(i/4) tr([λᵢ,λⱼ]λₖ) and dᵢⱼₖ = (1/4) tr({λᵢ,λⱼ}λₖ)."""
    lam = basis.lambda_array
    # prod[i, j] = λᵢλⱼ
    prod = np.einsum("iab,jbc->ijac", lam, lam)
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    f = (-0.25j * np.einsum("ijab,kba->ijk", comm, lam)).real
    d = (0.25 * np.einsum("ijab,kba->ijk", anti, lam)).real
    # Scrub rounding noise so exact zeros stay zero
    f[np.abs(f) < 1e-14] = 0.0
    d[np.abs(d) < 1e-14] = 0.0
    return StructureConstants(basis.n, f, d)


def commutator_bracket(A: QuantumOperator, B: QuantumOperator, hbar: float) -> QuantumOperator:
    """# Commutator Bracket
    (A, B)_q = (AB − BA)/(iħ)"""
    A._check(B)
    if not hbar > 0:
        raise ValueError(f"Invalid hbar {hbar}, must be positive")
    return QuantumOperator((A.matrix @ B.matrix - B.matrix @ A.matrix) / (1j * hbar))


def anticommutator(A: QuantumOperator, B: QuantumOperator) -> QuantumOperator:
    A._check(B)
    return QuantumOperator(A.matrix @ B.matrix + B.matrix @ A.matrix)


def traceless_split(Q: QuantumOperator) -> Tuple[complex, QuantumOperator]:
    """# Traceless Decomposition
    Q = c𝟙 + Q̃ with c = tr(Q)/n and tr(Q̃) = 0."""
    c = Q.trace() / Q.n
    return c, QuantumOperator(Q.matrix - c * np.eye(Q.n))


def expand_in_basis(Q: QuantumOperator, basis: SuBasis) -> Tuple[complex, np.ndarray]:
    """# Expand in the qᵢ
    Q = scalar·𝟙 + Σᵢ coeffsᵢ qᵢ, using tr(qᵢqⱼ) = (ħ²/2)δᵢⱼ."""
    if Q.n != basis.n:
        raise ValueError(f"Operator dimension {Q.n} does not match basis n={basis.n}")
    scalar, tilde = traceless_split(Q)
    coeffs = np.einsum("ab,iba->i", tilde.matrix, basis.q_array) * (2 / basis.hbar**2)
    return scalar, coeffs


def reconstruct(scalar: complex, coeffs, basis: SuBasis) -> QuantumOperator:
    """Inverse of `expand_in_basis`"""
    coeffs = np.asarray(coeffs)
    if coeffs.shape != (basis.size,):
        raise ValueError(f"Expected {basis.size} coefficients, got shape {coeffs.shape}")
    return QuantumOperator(scalar * np.eye(basis.n) + np.einsum("i,iab->ab", coeffs, basis.q_array))
