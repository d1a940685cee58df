"""
# Phase-Space Points
"""

# Std-Lib Imports
import math
from typing import Iterable, List, Optional, Sequence, Tuple, Union

# PyPi Imports
import numpy as np
from pydantic import validator
from scipy.stats import qmc

# Local Imports
from ..datatype import datatype


@datatype
class PhasePoint:
    """# Phase-Space Point
    Position `x` and momentum `k`, each of length n_c."""

    x: Tuple[float, ...]
    k: Tuple[float, ...]

    @validator("x", "k")
    def _finite(cls, v):
        if not all(math.isfinite(e) for e in v):
            raise ValueError(f"Non-finite phase-space coordinate in {v}")
        if not v:
            raise ValueError("Empty phase-space coordinate vector")
        return v

    @validator("k")
    def _same_length(cls, k, values):
        x = values.get("x", None)
        if x is not None and len(x) != len(k):
            raise ValueError(f"Position length {len(x)} does not match momentum length {len(k)}")
        return k

    @property
    def n_c(self) -> int:
        return len(self.x)

    def to_array(self) -> np.ndarray:
        """Flat (x..., k...) coordinate vector"""
        return np.array(self.x + self.k, dtype=float)

    @classmethod
    def from_array(cls, arr: Sequence[float]) -> "PhasePoint":
        arr = [float(a) for a in arr]
        if len(arr) % 2:
            raise ValueError(f"Phase-space vector must have even length, got {len(arr)}")
        n = len(arr) // 2
        return cls(x=tuple(arr[:n]), k=tuple(arr[n:]))


class PointSet:
    """
    # Point Set

    An ordered, read-only (m, 2·n_c) array of phase-space points.
    Ordering is part of the contract: point ids are row indices.
    """

    __slots__ = ("n_c", "array")

    def __init__(self, n_c: int, array):
        arr = np.array(array, dtype=float).reshape(-1, 2 * n_c)
        if not np.all(np.isfinite(arr)):
            raise ValueError("Non-finite entries in point set")
        arr.flags.writeable = False
        self.n_c = n_c
        self.array = arr

    def __len__(self) -> int:
        return self.array.shape[0]

    def __iter__(self):
        return (PhasePoint.from_array(row) for row in self.array)

    def __getitem__(self, idx: int) -> PhasePoint:
        return PhasePoint.from_array(self.array[idx])

    @property
    def x(self) -> np.ndarray:
        return self.array[:, : self.n_c]

    @property
    def k(self) -> np.ndarray:
        return self.array[:, self.n_c :]

    def angular_momentum(self) -> np.ndarray:
        """(m, 3) array of L = x × k. Requires n_c = 3."""
        if self.n_c != 3:
            raise ValueError(f"Angular momentum requires n_c=3, got n_c={self.n_c}")
        return np.cross(self.x, self.k)

    def subset(self, mask) -> "PointSet":
        return PointSet(self.n_c, self.array[np.asarray(mask)])

    def concat(self, other: "PointSet") -> "PointSet":
        if other.n_c != self.n_c:
            raise ValueError(f"Point set dimension mismatch: {self.n_c} vs {other.n_c}")
        return PointSet(self.n_c, np.concatenate([self.array, other.array]))

    @classmethod
    def from_points(cls, points: Iterable[PhasePoint]) -> "PointSet":
        points = list(points)
        if not points:
            raise ValueError("Empty point list")
        n_c = points[0].n_c
        if any(p.n_c != n_c for p in points):
            raise ValueError("Points of mixed dimension")
        return cls(n_c, [p.to_array() for p in points])

    @classmethod
    def halton(
        cls,
        n_c: int,
        count: int,
        box: float = 2.0,
        *,
        max_x: Optional[float] = None,
        max_k: Optional[float] = None,
        l_window: Optional[Tuple[float, float]] = None,
    ) -> "PointSet":
        """Deterministic low-discrepancy points in the box [-box, box]^(2 n_c).
        Optional limits on |x|, |k| and (for n_c = 3) on |L| filter candidates in sequence order
        until `count` points are accepted."""

        if count < 1:
            raise ValueError(f"Invalid point count {count}")
        sampler = qmc.Halton(d=2 * n_c, scramble=False)
        sampler.fast_forward(1)  # Skip the all-zeros first point

        accepted: List[np.ndarray] = []
        total, drawn = 0, 0
        while total < count:
            batch = 2 * box * sampler.random(max(64, 4 * count)) - box
            drawn += batch.shape[0]
            keep = np.ones(batch.shape[0], dtype=bool)
            x, k = batch[:, :n_c], batch[:, n_c:]
            if max_x is not None:
                keep &= np.linalg.norm(x, axis=1) <= max_x
            if max_k is not None:
                keep &= np.linalg.norm(k, axis=1) <= max_k
            if l_window is not None:
                if n_c != 3:
                    raise ValueError("An |L| window requires n_c=3")
                lnorm = np.linalg.norm(np.cross(x, k), axis=1)
                keep &= (lnorm >= l_window[0]) & (lnorm <= l_window[1])
            accepted.append(batch[keep])
            total += int(keep.sum())
            if drawn > 10_000 * count:
                raise ValueError("Point constraints too narrow for the sampling box")
        return cls(n_c, np.concatenate(accepted)[:count])


Points = Union[PhasePoint, PointSet, np.ndarray, Sequence[PhasePoint]]


def as_array(points: Points, n_c: int) -> np.ndarray:
    """Convert any accepted point representation into an (m, 2·n_c) array"""
    if isinstance(points, PhasePoint):
        arr = points.to_array()[None, :]
    elif isinstance(points, PointSet):
        arr = points.array
    elif isinstance(points, np.ndarray):
        arr = np.atleast_2d(points)
    else:
        arr = np.array([p.to_array() for p in points], dtype=float).reshape(-1, 2 * n_c)
    if arr.shape[1] != 2 * n_c:
        msg = f"Point dimension {arr.shape[1]} does not match phase space of n_c={n_c}"
        raise ValueError(msg)
    return arr
