"""
# Polynomials

Exact multivariate polynomials with real (or, internally, complex) coefficients.

Terms are stored as two parallel read-only arrays: packed exponent `keys`, one per term,
and `coeffs`. Each key packs the exponent of every variable into six bits, most-significant
variable first, so sorting keys sorts terms lexicographically by exponent. Every result
is brought to canonical form: keys unique and sorted, zero and negligible terms dropped.
"""

# Std-Lib Imports
from numbers import Number
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

# PyPi Imports
import numpy as np

EXPONENT_BITS = 6
MAX_EXPONENT = (1 << EXPONENT_BITS) - 1
MAX_VARIABLES = 63 // EXPONENT_BITS

# Coefficients below this fraction of a polynomial's largest coefficient are pruned
PRUNE_RELATIVE = 1e-14

Exponents = Tuple[int, ...]
Scalar = Union[int, float, complex]


def _shifts(nvars: int) -> np.ndarray:
    return EXPONENT_BITS * np.arange(nvars - 1, -1, -1, dtype=np.int64)


def pack(exps: np.ndarray) -> np.ndarray:
    """Pack an (m, nvars) exponent array into m integer keys"""
    exps = np.asarray(exps, dtype=np.int64)
    if exps.size and (exps.min() < 0 or exps.max() > MAX_EXPONENT):
        raise ValueError(f"Exponents must lie in [0, {MAX_EXPONENT}]")
    return (exps << _shifts(exps.shape[1])).sum(axis=1, dtype=np.int64)


def unpack(keys: np.ndarray, nvars: int) -> np.ndarray:
    """Inverse of `pack`"""
    keys = np.asarray(keys, dtype=np.int64)
    return (keys[:, None] >> _shifts(nvars)[None, :]) & MAX_EXPONENT


def _canonical(keys: np.ndarray, coeffs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Merge duplicate keys, sort, and prune negligible coefficients"""
    if keys.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=float)

    uniq, inv = np.unique(keys, return_inverse=True)
    if np.iscomplexobj(coeffs):
        summed = np.bincount(inv, weights=coeffs.real, minlength=uniq.size) + 1j * np.bincount(
            inv, weights=coeffs.imag, minlength=uniq.size
        )
    else:
        summed = np.bincount(inv, weights=coeffs, minlength=uniq.size)

    mags = np.abs(summed)
    top = mags.max()
    if top == 0 or not np.isfinite(top):
        if not np.isfinite(top):
            raise ValueError("Non-finite polynomial coefficient")
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=float)

    keep = mags > PRUNE_RELATIVE * top
    uniq, summed = uniq[keep], summed[keep]
    if np.iscomplexobj(summed) and not np.any(summed.imag):
        summed = summed.real.copy()
    return uniq, summed


class Polynomial:
    """
    # Polynomial

    Exact polynomial in `nvars` variables. Immutable.

    Constructed from a mapping of exponent-tuples to coefficients:

    ```python
    p = Polynomial(3, {(1, 0, 0): 2.0, (0, 0, 2): -1.0})  # 2 v1 - v3^2
    ```
    """

    __slots__ = ("nvars", "keys", "coeffs", "_exps")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponents, Scalar]] = None):
        nvars = int(nvars)
        if nvars < 1 or nvars > MAX_VARIABLES:
            raise ValueError(f"Invalid number of polynomial variables {nvars}, must be in [1, {MAX_VARIABLES}]")
        self.nvars = nvars

        terms = terms or dict()
        exps = np.array(list(terms.keys()), dtype=np.int64).reshape(len(terms), nvars)
        coeffs = np.array(list(terms.values()))
        if coeffs.dtype.kind not in "fc":
            coeffs = coeffs.astype(float)
        self._assign(pack(exps), coeffs)

    def _assign(self, keys: np.ndarray, coeffs: np.ndarray, canonical: bool = False) -> None:
        if not canonical:
            keys, coeffs = _canonical(keys, coeffs)
        keys.flags.writeable = False
        coeffs.flags.writeable = False
        self.keys = keys
        self.coeffs = coeffs
        self._exps = None

    def _new(self, keys: np.ndarray, coeffs: np.ndarray, canonical: bool = False) -> "Polynomial":
        """Create a polynomial of our own type and variable-count from raw arrays"""
        rv = object.__new__(type(self))
        rv.nvars = self.nvars
        rv._assign(keys, coeffs, canonical)
        return rv

    # Constructors

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variables(cls, nvars: int) -> Tuple["Polynomial", ...]:
        """The `nvars` degree-one monomials v1, v2, ..."""
        rv = []
        for i in range(nvars):
            exps = [0] * nvars
            exps[i] = 1
            rv.append(cls(nvars, {tuple(exps): 1.0}))
        return tuple(rv)

    def zero(self) -> "Polynomial":
        """The zero polynomial of our type and variable-count"""
        return self._new(np.zeros(0, dtype=np.int64), np.zeros(0), canonical=True)

    def const(self, value: Scalar) -> "Polynomial":
        """A constant polynomial of our type and variable-count"""
        return self._new(np.zeros(1, dtype=np.int64), np.array([value]))

    # Inspection

    @property
    def exps(self) -> np.ndarray:
        """(terms, nvars) exponent array"""
        if self._exps is None:
            self._exps = unpack(self.keys, self.nvars)
            self._exps.flags.writeable = False
        return self._exps

    @property
    def nterms(self) -> int:
        return int(self.keys.size)

    @property
    def is_zero(self) -> bool:
        return self.keys.size == 0

    @property
    def is_constant(self) -> bool:
        return self.keys.size == 0 or (self.keys.size == 1 and self.keys[0] == 0)

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coeffs)

    @property
    def constant_term(self) -> Scalar:
        if self.keys.size and self.keys[0] == 0:
            return self.coeffs[0].item()
        return 0.0

    def terms(self) -> Dict[Exponents, Scalar]:
        """Dictionary of exponent-tuples to coefficients"""
        return {tuple(int(e) for e in row): c.item() for row, c in zip(self.exps, self.coeffs)}

    def degree(self) -> int:
        """Total degree. The zero polynomial has degree -1."""
        if self.is_zero:
            return -1
        return int(self.exps.sum(axis=1).max())

    def norm(self) -> float:
        """Largest absolute coefficient"""
        if self.is_zero:
            return 0.0
        return float(np.abs(self.coeffs).max())

    @property
    def real(self) -> "Polynomial":
        return self._new(self.keys, np.real(self.coeffs).astype(float))

    @property
    def imag(self) -> "Polynomial":
        return self._new(self.keys, np.imag(self.coeffs).astype(float))

    def allclose(self, other: Union["Polynomial", Scalar], atol: float = 1e-10) -> bool:
        return (self - other).norm() <= atol

    # Arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if type(other) is not type(self) or other.nvars != self.nvars:
                msg = f"Polynomial mismatch: {type(self).__name__}({self.nvars} variables) "
                msg += f"vs {type(other).__name__}({other.nvars} variables)"
                raise ValueError(msg)
            return other
        if isinstance(other, Number):
            return self.const(other)
        raise TypeError(f"Invalid polynomial operand {other!r}")

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, (Polynomial, Number)):
            other = self._coerce(other)
            return self._new(
                np.concatenate([self.keys, other.keys]),
                np.concatenate([self.coeffs, other.coeffs]),
            )
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return self._new(self.keys, -self.coeffs, canonical=True)

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, (Polynomial, Number)):
            return self + (-self._coerce(other))
        return NotImplemented

    def __rsub__(self, other) -> "Polynomial":
        if isinstance(other, Number):
            return self.const(other) - self
        return NotImplemented

    def scale(self, factor: Scalar) -> "Polynomial":
        if factor == 0 or self.is_zero:
            return self.zero()
        return self._new(self.keys, self.coeffs * factor, canonical=True)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Number):
            return self.scale(other)
        if isinstance(other, Polynomial):
            return self._product(self._coerce(other))
        return NotImplemented

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, Number):
            return self.scale(1.0 / other)
        return NotImplemented

    def _product(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return self.zero()
        if np.any(self.exps.max(axis=0) + other.exps.max(axis=0) > MAX_EXPONENT):
            raise ValueError(f"Polynomial product exceeds the maximum exponent {MAX_EXPONENT}")
        # Exponent digits never carry, so adding packed keys adds exponents
        keys = (self.keys[:, None] + other.keys[None, :]).ravel()
        coeffs = np.outer(self.coeffs, other.coeffs).ravel()
        return self._new(keys, coeffs)

    def __pow__(self, power: int) -> "Polynomial":
        if not isinstance(power, (int, np.integer)) or power < 0:
            raise ValueError(f"Invalid polynomial power {power}")
        result, base = self.const(1.0), self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = self.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if type(other) is not type(self) or other.nvars != self.nvars:
            return False
        return np.array_equal(self.keys, other.keys) and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    # Calculus & Evaluation

    def derivative(self, var: int) -> "Polynomial":
        """Partial derivative with respect to variable index `var`"""
        if var < 0 or var >= self.nvars:
            raise ValueError(f"Invalid variable index {var} for {self.nvars}-variable polynomial")
        e = self.exps[:, var]
        mask = e > 0
        if not mask.any():
            return self.zero()
        step = np.int64(1) << _shifts(self.nvars)[var]
        # Decrementing one digit keeps the keys unique and sorted
        return self._new(self.keys[mask] - step, self.coeffs[mask] * e[mask], canonical=True)

    def gradient(self) -> List["Polynomial"]:
        return [self.derivative(v) for v in range(self.nvars)]

    def evaluate(self, points) -> Union[Scalar, np.ndarray]:
        """Evaluate at a single point (length-`nvars` vector) or an (m, nvars) array of points"""
        pts = np.asarray(points)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if pts.shape[1] != self.nvars:
            msg = f"Point dimension {pts.shape[1]} does not match {self.nvars}-variable polynomial"
            raise ValueError(msg)
        if self.is_zero:
            values = np.zeros(pts.shape[0])
        else:
            monomials = np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)
            values = monomials @ self.coeffs
        return values[0].item() if single else values

    def compose(self, subs: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute polynomial `subs[v]` for each variable `v`.
        The result has the type and variable-count of the substitutes."""
        if len(subs) != self.nvars:
            raise ValueError(f"Expected {self.nvars} substitutes, got {len(subs)}")
        like = subs[0]
        powers = dict()

        def power(v: int, e: int) -> "Polynomial":
            if (v, e) not in powers:
                powers[(v, e)] = subs[v] ** e
            return powers[(v, e)]

        parts = []
        for row, c in zip(self.exps, self.coeffs):
            term = like.const(c)
            for v, e in enumerate(row):
                if e:
                    term = term * power(v, int(e))
            parts.append(term)
        return polynomial_sum(parts, like)

    # Display

    def variable_names(self) -> List[str]:
        return [f"v{i + 1}" for i in range(self.nvars)]

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        names = self.variable_names()
        parts = []
        for row, c in zip(self.exps, self.coeffs):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, row) if e]
            coeff = f"{c.item():g}" if not isinstance(c.item(), complex) else f"({c.item():g})"
            parts.append("*".join([coeff] + factors) if factors else coeff)
        return " + ".join(parts)


def polynomial_sum(items: Iterable[Polynomial], like: Polynomial) -> Polynomial:
    """Sum of many polynomials of the same type as `like`, canonicalized once"""
    items = [like._coerce(p) for p in items]
    if not items:
        return like.zero()
    return like._new(
        np.concatenate([p.keys for p in items]),
        np.concatenate([p.coeffs for p in items]),
    )


class PhasePolynomial(Polynomial):
    """
    # Phase-Space Polynomial

    Polynomial in the 2·n_c canonical variables of a classical phase space,
    ordered positions first: (x1, ..., xn, k1, ..., kn).
    """

    __slots__ = ()

    def __init__(self, n_c: int, terms: Optional[Mapping[Exponents, Scalar]] = None):
        if int(n_c) < 1:
            raise ValueError(f"Invalid classical dimension n_c={n_c}")
        super().__init__(2 * int(n_c), terms)

    @property
    def n_c(self) -> int:
        return self.nvars // 2

    @classmethod
    def constant(cls, n_c: int, value: Scalar) -> "PhasePolynomial":
        return cls(n_c, {(0,) * (2 * n_c): value})

    @classmethod
    def zeros(cls, n_c: int) -> "PhasePolynomial":
        return cls(n_c)

    @classmethod
    def xs(cls, n_c: int) -> Tuple["PhasePolynomial", ...]:
        """Position monomials x1..xn"""
        return cls._monomials(n_c)[:n_c]

    @classmethod
    def ks(cls, n_c: int) -> Tuple["PhasePolynomial", ...]:
        """Momentum monomials k1..kn"""
        return cls._monomials(n_c)[n_c:]

    @classmethod
    def _monomials(cls, n_c: int) -> Tuple["PhasePolynomial", ...]:
        rv = []
        for i in range(2 * n_c):
            exps = [0] * (2 * n_c)
            exps[i] = 1
            rv.append(cls(n_c, {tuple(exps): 1.0}))
        return tuple(rv)

    @classmethod
    def parse(cls, text: Union[str, Number], n_c: int) -> "PhasePolynomial":
        """Parse a polynomial literal, e.g. `"2.5 * x1^2 * k2 - x3 + 4"`"""
        from .literal import parse_literal

        return parse_literal(text, n_c)

    def poisson(self, other: "PhasePolynomial") -> "PhasePolynomial":
        return poisson_bracket(self, other)

    def variable_names(self) -> List[str]:
        n = self.n_c
        return [f"x{i + 1}" for i in range(n)] + [f"k{i + 1}" for i in range(n)]


def _check_phase_pair(A, B) -> None:
    if not isinstance(A, PhasePolynomial) or not isinstance(B, PhasePolynomial):
        raise TypeError(f"Poisson bracket requires PhasePolynomials, got {type(A).__name__} and {type(B).__name__}")
    if A.n_c != B.n_c:
        raise ValueError(f"Poisson bracket dimension mismatch: n_c={A.n_c} vs n_c={B.n_c}")


def poisson_bracket(A: PhasePolynomial, B: PhasePolynomial) -> PhasePolynomial:
    """# Poisson Bracket
    Exact {A, B} = Σᵢ (∂A/∂xᵢ ∂B/∂kᵢ − ∂A/∂kᵢ ∂B/∂xᵢ)."""
    _check_phase_pair(A, B)
    n = A.n_c
    if A.is_constant or B.is_constant:
        return A.zero()

    parts = []
    for i in range(n):
        parts.append(A.derivative(i) * B.derivative(n + i))
        parts.append(-(A.derivative(n + i) * B.derivative(i)))
    return polynomial_sum(parts, A)
