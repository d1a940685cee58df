"""
# Plane Waves

e_r(x, k) = amplitude · exp(i k_r·x − i x_r·k), parametrized by (x_r, k_r).
Derivatives act as multiplication: ∂e_r/∂x = i k_r e_r and ∂e_r/∂k = −i x_r e_r,
so Poisson brackets of plane waves are evaluated symbolically.
"""

# Std-Lib Imports
from numbers import Number
from typing import Dict, Iterator, Tuple

# PyPi Imports
import numpy as np

# Local Imports
from .point import Points, as_array

WaveKey = Tuple[Tuple[float, ...], Tuple[float, ...]]


class PlaneWave:
    """# Plane Wave"""

    __slots__ = ("xr", "kr", "amplitude")

    def __init__(self, xr, kr, amplitude: complex = 1.0):
        xr = np.array(xr, dtype=float).ravel()
        kr = np.array(kr, dtype=float).ravel()
        if xr.shape != kr.shape:
            raise ValueError(f"Plane-wave parameter mismatch: x_r has {xr.size} entries, k_r has {kr.size}")
        xr.flags.writeable = False
        kr.flags.writeable = False
        self.xr = xr
        self.kr = kr
        self.amplitude = complex(amplitude)

    @property
    def n_c(self) -> int:
        return self.xr.size

    @property
    def key(self) -> WaveKey:
        return (tuple(self.xr.tolist()), tuple(self.kr.tolist()))

    def _check(self, other: "PlaneWave") -> None:
        if other.n_c != self.n_c:
            raise ValueError(f"Plane-wave dimension mismatch: {self.n_c} vs {other.n_c}")

    def __mul__(self, other) -> "PlaneWave":
        if isinstance(other, PlaneWave):
            self._check(other)
            return PlaneWave(self.xr + other.xr, self.kr + other.kr, self.amplitude * other.amplitude)
        if isinstance(other, Number):
            return PlaneWave(self.xr, self.kr, self.amplitude * other)
        return NotImplemented

    __rmul__ = __mul__

    def derivative(self, var: int) -> "PlaneWave":
        """Partial derivative with respect to phase-space variable `var`, positions first"""
        n = self.n_c
        if var < n:
            return self * (1j * self.kr[var])
        return self * (-1j * self.xr[var - n])

    def evaluate(self, points: Points) -> np.ndarray:
        arr = as_array(points, self.n_c)
        x, k = arr[:, : self.n_c], arr[:, self.n_c :]
        return self.amplitude * np.exp(1j * (x @ self.kr) - 1j * (k @ self.xr))

    def __repr__(self) -> str:
        return f"PlaneWave(xr={self.xr.tolist()}, kr={self.kr.tolist()}, amplitude={self.amplitude})"


class PlaneWaveSum:
    """# Linear Combination of Plane Waves
    Terms are keyed by their (x_r, k_r) parameters; amplitudes of equal keys add."""

    __slots__ = ("n_c", "terms")

    def __init__(self, n_c: int, terms: Dict[WaveKey, complex] = None):
        self.n_c = n_c
        self.terms = {k: v for k, v in (terms or dict()).items() if v != 0}

    @classmethod
    def of(cls, *waves: PlaneWave) -> "PlaneWaveSum":
        if not waves:
            raise ValueError("PlaneWaveSum.of requires at least one wave")
        rv = cls(waves[0].n_c)
        for w in waves:
            rv = rv + w
        return rv

    def waves(self) -> Iterator[PlaneWave]:
        for (xr, kr), amp in self.terms.items():
            yield PlaneWave(xr, kr, amp)

    def __add__(self, other) -> "PlaneWaveSum":
        if isinstance(other, PlaneWave):
            other = PlaneWaveSum(other.n_c, {other.key: other.amplitude})
        if not isinstance(other, PlaneWaveSum):
            return NotImplemented
        if other.n_c != self.n_c:
            raise ValueError(f"Plane-wave dimension mismatch: {self.n_c} vs {other.n_c}")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return PlaneWaveSum(self.n_c, terms)

    def __mul__(self, other) -> "PlaneWaveSum":
        if isinstance(other, Number):
            return PlaneWaveSum(self.n_c, {k: v * other for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def amplitude_of(self, wave: PlaneWave) -> complex:
        return self.terms.get(wave.key, 0j)

    def evaluate(self, points: Points) -> np.ndarray:
        arr = as_array(points, self.n_c)
        total = np.zeros(arr.shape[0], dtype=complex)
        for w in self.waves():
            total += w.evaluate(arr)
        return total


def planewave_pairing(r: PlaneWave, s: PlaneWave) -> float:
    """# Plane-Wave Pairing
    v_rs = k_r·x_s − x_r·k_s"""
    r._check(s)
    return float(r.kr @ s.xr - r.xr @ s.kr)


def planewave_poisson(r: PlaneWave, s: PlaneWave) -> PlaneWaveSum:
    """Symbolic Poisson bracket {e_r, e_s}, from the derivative rules"""
    r._check(s)
    n = r.n_c
    rv = PlaneWaveSum(n)
    for i in range(n):
        rv = rv + r.derivative(i) * s.derivative(n + i)
        rv = rv + r.derivative(n + i) * s.derivative(i) * -1.0
    return rv


def planewave_product(r: PlaneWave, s: PlaneWave) -> PlaneWaveSum:
    """Pointwise product e_r e_s"""
    return PlaneWaveSum.of(r * s)
