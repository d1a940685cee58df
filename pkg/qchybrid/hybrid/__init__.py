"""
# Hybrid Quantum-Classical Algebra

Observables, density fields, and the hybrid brackets between them.
"""

from .observable import HybridObservable, operator_product, contract
from .density import DensityField, DEFAULT_CENTER, DEFAULT_WIDTH, NORMALIZATION_TOL
from .brackets import (
    BracketKind,
    BracketSpec,
    Ansatz,
    BracketChannels,
    bracket_channels,
    bracket_function,
    heisenberg_bracket,
    ansatz_bracket,
    standard_bracket,
    anderson_bracket,
    poisson_operator_product,
    commutator_part,
    schrodinger_bracket,
    cyclic_sum,
    jacobi_residual,
    residual_scale,
    leibniz_expand,
    pairing,
    adjoint_identity_residual,
)
from .witness import (
    JacobiWitness,
    standard_jacobi_witness,
    anderson_antisymmetry_witness,
    find_jacobi_witness,
)
