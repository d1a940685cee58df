"""
# Rotation Field

At each phase point, the rotation R_t about L/|L| by angle −g·t·|L|.
"""

# PyPi Imports
import numpy as np
from scipy.spatial.transform import Rotation

# Local Imports
from ..classical.point import Points, as_array
from ..models import N_C, angular_momentum_values


class RotationField:
    """# Rotation Field R_t(p)
    Pointwise 3×3 rotations. `inverse` gives R_t⁻¹ = R_tᵀ, the rotation by +g·t·L."""

    __slots__ = ("g", "t")

    def __init__(self, g: float, t: float):
        self.g = float(g)
        self.t = float(t)

    def from_momenta(self, L: np.ndarray) -> np.ndarray:
        """(m, 3, 3) rotations from an (m, 3) array of angular momenta"""
        L = np.atleast_2d(np.asarray(L, dtype=float))
        return Rotation.from_rotvec(-self.g * self.t * L).as_matrix().reshape(-1, 3, 3)

    def matrices(self, points: Points) -> np.ndarray:
        return self.from_momenta(angular_momentum_values(as_array(points, N_C)))

    def inverse(self, points: Points) -> np.ndarray:
        return np.transpose(self.matrices(points), (0, 2, 1))

    def compose(self, other: "RotationField") -> "RotationField":
        """R_t R_s = R_{t+s} for equal couplings"""
        if other.g != self.g:
            raise ValueError(f"Cannot compose rotation fields of couplings {self.g} and {other.g}")
        return RotationField(self.g, self.t + other.t)
